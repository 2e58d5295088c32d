"""Central extensions (a, x)(b, y) = (phi a + psi b + theta(x, y), xy)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from rumple import modp
from rumple.affine import (AbelianGroup, _apply, affine_datum, check_compatible,
                           factorize, is_affine, is_automorphism, rump_condition)
from rumple.core import (Magma, is_latin_rumple, is_left_quasigroup,
                         is_rumple, satisfies_left_rump, satisfies_right_rump)
from rumple.errors import (BaseNotAffineLatin, InvalidExtension,
                           RumpConditionFails)
from rumple.permgroup import (dis, fingerprint, is_abelian, is_nilpotent,
                              is_normal_in, is_regular, mlt)

KLEIN_A = np.array([[0, 1], [1, 0]], dtype=np.int64)
KLEIN_B = np.array([[1, 0], [1, 1]], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class ExtensionDatum:
    group: AbelianGroup
    base: Magma
    phi: np.ndarray
    psi: np.ndarray
    theta: np.ndarray          # (|F|, |F|, rank) group elements

    def __post_init__(self):
        G = self.group
        object.__setattr__(self, "phi", check_compatible(G, self.phi))
        object.__setattr__(self, "psi", check_compatible(G, self.psi))
        m = self.base.order
        th = np.asarray(self.theta, dtype=np.int64)
        if th.shape != (m, m, G.rank):
            raise InvalidExtension(f"theta must have shape {(m, m, G.rank)}, got {th.shape}")
        object.__setattr__(self, "theta", th % G.moduli if G.rank else th)

    def to_json(self) -> dict:
        return {"factors": list(self.group.factors), "phi": self.phi.tolist(),
                "psi": self.psi.tolist(), "base": self.base.table.tolist(),
                "theta": self.theta.tolist()}

    @classmethod
    def from_json(cls, obj) -> "ExtensionDatum":
        G = AbelianGroup(obj["factors"])
        k = G.rank
        base = Magma(np.array(obj["base"], dtype=np.int64))
        m = base.order
        return cls(G, base, np.array(obj["phi"]).reshape(k, k), np.array(obj["psi"]).reshape(k, k),
                   np.array(obj["theta"], dtype=np.int64).reshape(m, m, k))


def zero_cocycle(G: AbelianGroup, F: Magma) -> np.ndarray:
    return np.zeros((F.order, F.order, G.rank), np.int64)


def _validate(E: ExtensionDatum):
    if not is_automorphism(E.group, E.psi):
        raise InvalidExtension("psi must be an automorphism")
    if not (is_left_quasigroup(E.base) and satisfies_left_rump(E.base)):
        raise InvalidExtension("the base must be a Rump left quasigroup")


def ext_to_magma(E: ExtensionDatum) -> Magma:
    """Table on G x F; element (a, x) has index idx(a) * |F| + x."""
    _validate(E)
    G, F = E.group, E.base
    m = F.order
    el = G.elements()
    pa = _apply(G, E.phi, el)
    pb = _apply(G, E.psi, el)
    # [a, b, x, y] -> phi a + psi b + theta(x, y)
    s = pa[:, None, None, None, :] + pb[None, :, None, None, :] + E.theta[None, None, :, :, :]
    first = G.index(s)
    second = np.broadcast_to(F.table[None, None], first.shape)
    t = first * m + second
    N = G.size * m
    # rows (a, x), columns (b, y)
    return Magma(t.transpose(0, 2, 1, 3).reshape(N, N))


def _cocycle_residual(E: ExtensionDatum) -> np.ndarray:
    G, F = E.group, E.base
    f = F.table
    th = E.theta
    m = F.order
    x, y, z = np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij")
    r = (_apply(G, E.phi, th[x, y] - th[y, x]) + _apply(G, E.psi, th[x, z] - th[y, z])
         + th[f[x, y], f[x, z]] - th[f[y, x], f[y, z]])
    return r % G.moduli if G.rank else r


def cocycle_condition(E: ExtensionDatum) -> bool:
    """The identity that makes the extension satisfy the left Rump identity."""
    if not rump_condition(E.group, E.phi, E.psi):
        raise RumpConditionFails("[phi, psi] != phi^2")
    ok = not np.any(_cocycle_residual(E))
    if is_left_quasigroup(E.base) and satisfies_left_rump(E.base) and is_automorphism(E.group, E.psi):
        assert ok == satisfies_left_rump(ext_to_magma(E))
    return ok


def cocycle_system(G: AbelianGroup, F: Magma, phi, psi) -> np.ndarray:
    """Coefficient matrix of the cocycle identity over F_p.

    Unknown (i, x, y) is theta(x, y)_i with index i*m^2 + x*m + y; one row per
    output coordinate and triple (x, y, z).
    """
    p = _prime(G)
    k, m = G.rank, F.order
    A = np.asarray(phi, dtype=np.int64) % p
    B = np.asarray(psi, dtype=np.int64) % p
    f = F.table

    def var(i, a, b):
        return i * m * m + a * m + b

    rows = np.zeros((k * m ** 3, k * m * m), np.int64)
    r = 0
    for x, y, z in itertools.product(range(m), repeat=3):
        for out in range(k):
            row = rows[r]
            for j in range(k):
                row[var(j, x, y)] += A[out, j]
                row[var(j, y, x)] -= A[out, j]
                row[var(j, x, z)] += B[out, j]
                row[var(j, y, z)] -= B[out, j]
            row[var(out, f[x, y], f[x, z])] += 1
            row[var(out, f[y, x], f[y, z])] -= 1
            r += 1
    return rows % p


def _prime(G: AbelianGroup) -> int:
    if not G.is_elementary():
        raise ValueError("the cocycle solver needs an elementary abelian group")
    return G.factors[0]


def vector_to_theta(v, G: AbelianGroup, m: int) -> np.ndarray:
    return np.asarray(v, dtype=np.int64).reshape(G.rank, m, m).transpose(1, 2, 0)


def theta_to_vector(theta) -> np.ndarray:
    return np.asarray(theta, dtype=np.int64).transpose(2, 0, 1).ravel()


def solve_cocycles(G: AbelianGroup, F: Magma, phi, psi) -> list:
    """Basis of all cocycles as theta arrays of shape (m, m, rank)."""
    if not rump_condition(G, phi, psi):
        raise RumpConditionFails("[phi, psi] != phi^2")
    p = _prime(G)
    M = cocycle_system(G, F, phi, psi)
    basis = modp.nullspace(M, p)
    out = [vector_to_theta(v, G, F.order) for v in basis]
    for th in out[:8]:
        assert cocycle_condition(ExtensionDatum(G, F, phi, psi, th)) if F.order else True
    return out


def klein_theta(F: Magma) -> np.ndarray:
    """theta(x, y) = (0, [x = y])."""
    m = F.order
    th = np.zeros((m, m, 2), np.int64)
    th[np.arange(m), np.arange(m), 1] = 1
    return th


def klein_extension(F: Magma, check: bool = True) -> ExtensionDatum:
    """Extension of a nontrivial affine latin rumple by the Klein group whose
    displacement group is nonabelian."""
    if F.order < 2 or not is_latin_rumple(F) or not is_affine(F):
        raise BaseNotAffineLatin("the base must be a nontrivial affine latin rumple")
    E = ExtensionDatum(AbelianGroup([2, 2]), F, KLEIN_A, KLEIN_B, klein_theta(F))
    if check:
        X = ext_to_magma(E)
        assert cocycle_condition(E)
        assert is_latin_rumple(X)
        assert not is_abelian(dis(X))
        assert not is_affine(X)
    return E


def trivial_magma() -> Magma:
    return Magma([[0]])


def iterate_extensions(layers: Iterable) -> tuple:
    """Fold extension layers starting from the one-element magma.

    A layer is ``"klein"`` or a tuple ``(factors, phi, psi, theta)`` where
    theta may be None for the zero cocycle.  Returns the final magma and the
    number of layers, which bounds the nilpotence class from above.
    """
    X = trivial_magma()
    count = 0
    for layer in layers:
        if isinstance(layer, str):
            if layer != "klein":
                raise InvalidExtension(f"unknown layer {layer!r}")
            E = klein_extension(X)
        else:
            factors, phi, psi, theta = layer
            G = AbelianGroup(factors)
            th = zero_cocycle(G, X) if theta is None else theta
            E = ExtensionDatum(G, X, np.asarray(phi).reshape(G.rank, G.rank),
                               np.asarray(psi).reshape(G.rank, G.rank), th)
            if not cocycle_condition(E):
                raise InvalidExtension(f"layer {count + 1} violates the cocycle identity")
        X = ext_to_magma(E)
        count += 1
    return X, count


def nilpotent_order_ok(m: int) -> bool:
    """Orders of the form prod p^(p k)."""
    return all(k % p == 0 for p, k in factorize(m).items())


# -- witness hunt ------------------------------------------------------------

WITNESS_PROPERTIES = ("dis_nonabelian", "dis_abelian_not_normal",
                      "right_rump_not_group_isotopic", "dis_not_nilpotent")


def properties_of(X: Magma) -> dict:
    out = {}
    if not is_latin_rumple(X):
        return {"latin_rumple": False}
    D = dis(X)
    ab = is_abelian(D)
    out["latin_rumple"] = True
    out["dis_nonabelian"] = not ab
    out["dis_abelian_not_normal"] = ab and not is_normal_in(D, mlt(X))
    out["right_rump_not_group_isotopic"] = satisfies_right_rump(X) and not is_regular(D)
    out["dis_not_nilpotent"] = not is_nilpotent(D)
    out["dis"] = fingerprint(D)
    return out


def search_witnesses(G: AbelianGroup, F: Magma, phi, psi, limit: int = 4096) -> dict:
    """Scan cocycles in the solved space (in a fixed order) and report, for
    each property, the first coefficient vector whose extension has it."""
    basis = solve_cocycles(G, F, phi, psi)
    p = _prime(G)
    found = {name: None for name in WITNESS_PROPERTIES}
    scanned = 0
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if scanned >= limit or all(v is not None for v in found.values()):
            break
        scanned += 1
        th = np.zeros((F.order, F.order, G.rank), np.int64)
        for a, b in zip(coeffs, basis):
            th = th + a * b
        E = ExtensionDatum(G, F, phi, psi, th % p)
        props = properties_of(ext_to_magma(E))
        for name in WITNESS_PROPERTIES:
            if found[name] is None and props.get(name):
                found[name] = {"coefficients": list(coeffs), "dis": props["dis"]}
    return {"dimension": len(basis), "scanned": scanned, "found": found}


def affine_layer(factors, phi, psi, c) -> tuple:
    """A layer over the one-element magma equivalent to Aff(G, phi, psi, c)."""
    D = affine_datum(factors, phi, psi, c)
    return (factors, D.phi, D.psi, D.c.reshape(1, 1, -1))
