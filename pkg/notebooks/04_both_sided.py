# %% [markdown]
# # Both-sided rumples
#
# Latin rumples that also satisfy (zx)(yx) = (zy)(xy).  Their squaring map
# reverses products and their loop isotopes have exponent 2.

# %%
import numpy as np

from rumple import core, permgroup as pg

X = core.magma([[1, 3, 0, 2], [0, 2, 1, 3], [2, 0, 3, 1], [3, 1, 2, 0]])
print("both-sided:", core.is_both_sided_rumple(X))
print("opposite both-sided:", core.is_both_sided_rumple(core.opposite(X)))

# %%
sq = core.squaring_map(X)
print("sigma:", sq, " sigma^2:", sq[sq])
print("antiautomorphism:",
      all(sq[X(x, y)] == X(sq[y], sq[x]) for x in range(4) for y in range(4)))
print("generator exponents (left, right):", pg.bothsided_generator_exponents(X))

# %%
for e in range(4):
    L = core.principal_loop_isotope(X, e, e)
    print(f"e={e}: identity {X(e, e)}, squares {[L(x, x) for x in range(4)]}")
