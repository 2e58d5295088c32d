# %% [markdown]
# # Central extensions
#
# (a, x)(b, y) = (phi a + psi b + theta(x, y), xy) over G x F.  Over an
# elementary abelian G the admissible theta form an F_p-subspace.

# %%
import numpy as np

from rumple import affine as af
from rumple import core, extensions as ex, permgroup as pg

A = np.array([[0, 1], [1, 0]])
B = np.array([[1, 0], [1, 1]])
G = af.AbelianGroup([2, 2])
bases = {"X41": core.magma([[0, 1, 3, 2], [2, 3, 1, 0], [1, 0, 2, 3], [3, 2, 0, 1]]),
         "X42": core.magma([[1, 3, 0, 2], [0, 2, 1, 3], [2, 0, 3, 1], [3, 1, 2, 0]])}

# %% [markdown]
# ## The Klein construction

# %%
for name, F in bases.items():
    X = ex.ext_to_magma(ex.klein_extension(F))
    D = pg.dis(X)
    print(name, "->", X.order, "latin:", core.is_latin_rumple(X),
          "Dis:", pg.fingerprint(D), "affine:", af.is_affine(X))

# %% [markdown]
# ## The cocycle space and a witness hunt
#
# For each property the first cocycle (in coefficient order) whose extension
# has it is reported; nothing is asserted about which ones exist.

# %%
for name, F in bases.items():
    res = ex.search_witnesses(G, F, A, B, limit=512)
    print(name, "dimension", res["dimension"], "scanned", res["scanned"])
    for prop, hit in res["found"].items():
        print(f"   {prop:30s}", "none" if hit is None else hit["dis"])

# %% [markdown]
# ## Iterating layers

# %%
X, k = ex.iterate_extensions([ex.affine_layer([2, 2], A, B, [0, 0]), "klein"])
print("layers:", k, "order:", X.order, "nilpotent order form:", ex.nilpotent_order_ok(X.order))
