# %% [markdown]
# # Affine latin rumples
#
# x*y = phi(x) + psi(y) + c over a finite abelian group, with the condition
# phi psi - psi phi = phi^2.  Classes are counted up to isomorphism.

# %%
import time

import numpy as np

from rumple import affine as af
from rumple import core

# %%
for factors in ([2, 2], [2, 2, 2], [4, 2], [3, 3, 3], [2, 2, 2, 2], [8, 8]):
    t = time.perf_counter()
    data = af.enumerate_affine_latin(af.AbelianGroup(factors))
    print(f"{'x'.join('Z%d' % f for f in factors):14s} {len(data):3d} classes "
          f"({time.perf_counter() - t:.1f}s)")

# %% [markdown]
# Orders admitting an affine latin rumple: every prime power p^k exactly
# dividing the order must have p | k.

# %%
print([m for m in range(1, 2000) if af.spectrum_admits(m)])

# %% [markdown]
# ## A circulant family of order p^p
#
# A = Circ(0,...,0,1) and B = Circ(c) - D; B is invertible exactly when
# c_1 + ... + c_(p-1) is nonzero mod p.

# %%
p = 3
for c in ([1, 0, 0], [1, 1, 0], [1, 2, 0]):
    B = af.circulant_B(p, c)
    print(c, "det =", af.circulant_det_formula(p, c))
X = af.build_cc_rumple(3, [1, 0, 0])
print("order", X.order, "latin rumple:", core.is_latin_rumple(X), "affine:", af.is_affine(X))

# %% [markdown]
# ## Recovering a representation from the table

# %%
D = af.affinize(X)
print(D.to_json())
print("round trip isomorphic:", core.find_isomorphism(af.aff_to_magma(D), X) is not None)
