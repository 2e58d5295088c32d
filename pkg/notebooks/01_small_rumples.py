# %% [markdown]
# # Small rumples
#
# Enumerate rumples of small order up to isomorphism, pick out the latin
# ones, and pass each through the Yang-Baxter correspondence.

# %%
import time

import numpy as np

from rumple import core, permgroup as pg, yangbaxter as yb
from rumple.search import SearchConfig, enumerate_rumples

# %% [markdown]
# ## Counts by order

# %%
classes = {}
for n in range(1, 7):
    t = time.perf_counter()
    res = enumerate_rumples(SearchConfig(n))
    classes[n] = res.magmas
    latin = sum(core.is_latin_rumple(X) for X in res.magmas)
    print(f"n={n}: {res.count:4d} classes, {latin} latin, {res.nodes} nodes, "
          f"{time.perf_counter() - t:.2f}s")

# %% [markdown]
# Only order 4 contributes latin examples (besides the trivial one).  Both
# satisfy the mirror identity as well.

# %%
for X in classes[4]:
    if core.is_latin_rumple(X):
        print(X.table)
        print("  both-sided:", core.is_both_sided_rumple(X),
              " self-dual:", core.find_isomorphism(core.dual_rumple(X), X) is not None)

# %% [markdown]
# ## Solutions of the braid equation
#
# Each rumple gives an involutive nondegenerate solution; the biquandle
# witness is the square-root map.

# %%
X = next(X for X in classes[4] if core.is_latin_rumple(X))
s = yb.rumple_to_solution(X)
print("r1 =\n", s.r1)
print("r2 =\n", s.r2)
print("witness t:", yb.is_biquandle(s), " sqrt map:", yb.square_root_permutation(X))

# %% [markdown]
# ## Displacement groups at order 6
#
# Tally |Dis| and |LMlt| over all 595 classes.

# %%
from collections import Counter

tally = Counter()
for X in classes[6]:
    tally[(pg.dis(X).order, pg.lmlt(X).order)] += 1
for (d, l), k in sorted(tally.items()):
    print(f"|Dis|={d:3d} |LMlt|={l:3d}: {k}")
