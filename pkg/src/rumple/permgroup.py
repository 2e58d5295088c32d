"""Permutation groups materialized as explicit element sets.

A permutation is an image array ``p`` with ``p[x]`` the image of x.  Products
compose right to left, ``(p*q)[x] = p[q[x]]``, so ``L_a L_b`` means "apply
L_b first", matching the usual notation for translations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from rumple.core import (Magma, is_both_sided_rumple, is_left_quasigroup,
                         is_quasigroup)
from rumple.errors import (CapExceeded, NotBothSided, NotLeftQuasigroup,
                           NotQuasigroup, NotSubgroup)

DEFAULT_CAP = 10 ** 7


def compose(p, q):
    return p[q]


def inverse(p):
    r = np.empty_like(p)
    r[p] = np.arange(len(p))
    return r


def identity(n):
    return np.arange(n, dtype=np.int64)


def perm_order(p) -> int:
    """Order of a permutation: lcm of its cycle lengths."""
    n = len(p)
    seen = np.zeros(n, bool)
    out = 1
    for s in range(n):
        if not seen[s]:
            m, y = 0, s
            while not seen[y]:
                seen[y] = True
                y = p[y]
                m += 1
            out = out * m // gcd(out, m)
    return out


def _key(p):
    return p.tobytes()


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple
    elements: np.ndarray       # (order, degree), rows sorted lexicographically
    _index: dict

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    def __contains__(self, p) -> bool:
        return _key(np.asarray(p, dtype=np.int64)) in self._index

    def __len__(self):
        return self.order

    def same_elements(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and self._index.keys() == other._index.keys()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _distinct(perms):
    """Drop repeated and identity generators, keeping first occurrences."""
    seen = set()
    out = []
    for p in perms:
        k = _key(p)
        if k not in seen and not np.array_equal(p, np.arange(len(p))):
            seen.add(k)
            out.append(p)
    return out


def close(generators: Sequence, degree: int | None = None, cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of the generators under composition."""
    raw = [np.asarray(g, dtype=np.int64) for g in generators]
    if degree is None:
        if not raw:
            raise ValueError("degree is required for an empty generator list")
        degree = len(raw[0])
    if any(len(g) != degree for g in raw):
        raise ValueError("generators of different degree")
    gens = _distinct(raw)
    e = identity(degree)
    seen = {_key(e): e}
    frontier = [e]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = g[p]
                k = _key(q)
                if k not in seen:
                    seen[k] = q
                    new.append(q)
                    if len(seen) > cap:
                        raise CapExceeded(f"group exceeds {cap} elements")
        frontier = new
    elems = np.array(sorted(seen.values(), key=lambda p: p.tolist()), dtype=np.int64)
    elems = elems.reshape(len(seen), degree)
    index = {_key(p): i for i, p in enumerate(elems)}
    return PermGroup(degree, tuple(gens), elems, index)


# -- translation groups -------------------------------------------------------

def left_translations(X: Magma):
    return [X.table[x].copy() for x in range(X.order)]


def right_translations(X: Magma):
    return [X.table[:, x].copy() for x in range(X.order)]


def lmlt(X: Magma, cap: int = DEFAULT_CAP) -> PermGroup:
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return close(left_translations(X), X.order, cap)


def mlt(X: Magma, cap: int = DEFAULT_CAP) -> PermGroup:
    if not is_quasigroup(X):
        raise NotQuasigroup("table is not a latin square")
    return close(left_translations(X) + right_translations(X), X.order, cap)


def dis_plus_generators(X: Magma, e: int = 0):
    L = left_translations(X)
    inv_e = inverse(L[e])
    return [L[x][inv_e] for x in range(X.order)]


def dis_minus_generators(X: Magma, e: int = 0):
    L = left_translations(X)
    inv_e = inverse(L[e])
    return [inv_e[L[x]] for x in range(X.order)]


def dis_plus(X: Magma, cap: int = DEFAULT_CAP) -> PermGroup:
    """<L_x L_0^-1>."""
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return close(dis_plus_generators(X), X.order, cap)


def dis_minus(X: Magma, cap: int = DEFAULT_CAP) -> PermGroup:
    """<L_0^-1 L_x>."""
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return close(dis_minus_generators(X), X.order, cap)


def dis(X: Magma, cap: int = DEFAULT_CAP) -> PermGroup:
    """The displacement group, generated by both families above."""
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return close(dis_plus_generators(X) + dis_minus_generators(X), X.order, cap)


# -- predicates ---------------------------------------------------------------

def _gens(G: PermGroup):
    return list(G.generators) if G.generators else [identity(G.degree)]


def is_abelian(G: PermGroup) -> bool:
    gs = _gens(G)
    return all(np.array_equal(a[b], b[a]) for i, a in enumerate(gs) for b in gs[i + 1:])


def orbit(G: PermGroup, x: int):
    return sorted(set(G.elements[:, x].tolist()))


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(G, 0)) == G.degree


def is_regular(G: PermGroup) -> bool:
    return is_transitive(G) and G.order == G.degree


def is_subgroup(H: PermGroup, G: PermGroup) -> bool:
    return H.degree == G.degree and all(k in G._index for k in H._index)


def is_normal_in(H: PermGroup, G: PermGroup) -> bool:
    if not is_subgroup(H, G):
        raise NotSubgroup("H is not contained in G")
    for g in _gens(G):
        gi = inverse(g)
        for h in _gens(H):
            if g[h[gi]] not in H:
                return False
    return True


def element_order(G: PermGroup, g) -> int:
    g = np.asarray(g, dtype=np.int64)
    if g not in G:
        raise NotSubgroup("element not in group")
    return perm_order(g)


def is_cyclic(G: PermGroup) -> bool:
    return any(perm_order(p) == G.order for p in G.elements)


def commutator(a, b):
    """[a, b] = a^-1 b^-1 a b."""
    return inverse(a)[inverse(b)[a[b]]]


def normal_closure(S, G: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """Smallest subgroup containing S that is normalized by G."""
    gens = [np.asarray(s, dtype=np.int64) for s in S]
    H = close(gens, G.degree, cap)
    changed = True
    while changed:
        changed = False
        for g in _gens(G):
            gi = inverse(g)
            for h in list(H.generators):
                c = g[h[gi]]
                if c not in H:
                    gens.append(c)
                    changed = True
        if changed:
            H = close(gens, G.degree, cap)
    return H


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = _gens(G)
    comms = [commutator(a, b) for a in gs for b in gs]
    return normal_closure(comms, G)


def derived_series(G: PermGroup):
    series = [G]
    while series[-1].order > 1:
        D = derived_subgroup(series[-1])
        if D.order == series[-1].order:
            break
        series.append(D)
    return series


def is_solvable(G: PermGroup) -> bool:
    return derived_series(G)[-1].order == 1


def lower_central_series(G: PermGroup):
    series = [G]
    gs = _gens(G)
    while series[-1].order > 1:
        H = series[-1]
        comms = [commutator(a, b) for a in _gens(H) for b in gs]
        D = normal_closure(comms, G)
        if D.order == H.order:
            break
        series.append(D)
    return series


def is_nilpotent(G: PermGroup) -> bool:
    return lower_central_series(G)[-1].order == 1


def center(G: PermGroup) -> list:
    gs = _gens(G)
    return [p for p in G.elements if all(np.array_equal(p[g], g[p]) for g in gs)]


def exponent(G: PermGroup) -> int:
    out = 1
    for p in G.elements:
        m = perm_order(p)
        out = out * m // gcd(out, m)
    return out


def fingerprint(G: PermGroup) -> dict:
    """Order, exponent, center size and element-order histogram."""
    hist = {}
    for p in G.elements:
        m = perm_order(p)
        hist[m] = hist.get(m, 0) + 1
    return {"order": G.order, "exponent": exponent(G), "center": len(center(G)),
            "element_orders": dict(sorted(hist.items()))}


def report(G: PermGroup) -> dict:
    return {"order": G.order, "abelian": is_abelian(G), "transitive": is_transitive(G),
            "regular": is_regular(G), "solvable": is_solvable(G)}


def bothsided_generator_exponents(X: Magma):
    """Largest orders of L_x L_y^-1 and of R_x R_y^-1; both divide 4."""
    if not is_both_sided_rumple(X):
        raise NotBothSided("table is not a both-sided rumple")
    L = left_translations(X)
    R = right_translations(X)
    n = X.order
    lmax = max(perm_order(L[x][inverse(L[y])]) for x in range(n) for y in range(n))
    rmax = max(perm_order(R[x][inverse(R[y])]) for x in range(n) for y in range(n))
    assert 4 % lmax == 0 and 4 % rmax == 0
    return lmax, rmax


def permutation_json(p) -> dict:
    return {"images": [int(v) for v in p]}
