"""Finite binary algebras given by multiplication tables.

Elements are ``0..n-1`` and ``table[x, y]`` is the product ``x*y``, so row x
is the left translation L_x and column y the right translation R_y.
Predicates are total on arbitrary tables; nothing is enforced at
construction beyond the table being a square array of valid entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rumple._canon import canonical_labeling
from rumple.errors import (DimensionMismatch, EntryOutOfRange, NoSquareRoot,
                           NotAGroup, NotLeftQuasigroup, NotQuasigroup,
                           NotRumple, ParseError)


@dataclass(frozen=True, eq=False)
class Magma:
    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __eq__(self, other):
        return (isinstance(other, Magma) and self.order == other.order
                and bool(np.array_equal(self.table, other.table)))

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"Magma({self.table.tolist()})"

    def __call__(self, x, y):
        return int(self.table[x, y])

    def rows(self):
        return self.table.tolist()


def from_table(order: int, rows) -> Magma:
    arr = np.asarray(rows)
    if arr.ndim != 2 or arr.shape != (order, order) or order < 1:
        raise DimensionMismatch(f"expected a {order}x{order} table, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise EntryOutOfRange("table entries must be integers")
    if arr.min() < 0 or arr.max() >= order:
        raise EntryOutOfRange(f"entries must lie in 0..{order - 1}")
    return Magma(arr)


def magma(rows) -> Magma:
    rows = np.asarray(rows)
    return from_table(rows.shape[0], rows)


def projection(n: int) -> Magma:
    """The magma x*y = y."""
    return Magma(np.tile(np.arange(n), (n, 1)))


def cyclic_group(n: int) -> Magma:
    a = np.arange(n)
    return Magma((a[:, None] + a[None, :]) % n)


def dihedral_group(m: int) -> Magma:
    """Dihedral group of order 2m; element r^k s^e is encoded as k + m*e."""
    n = 2 * m
    t = np.zeros((n, n), np.int64)
    for a in range(n):
        k1, e1 = a % m, a // m
        for b in range(n):
            k2, e2 = b % m, b // m
            k = (k1 + (k2 if e1 == 0 else -k2)) % m
            t[a, b] = k + m * ((e1 + e2) % 2)
    return Magma(t)


def symmetric_group(k: int) -> Magma:
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    t = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return Magma(t)


def relabel(X: Magma, perm) -> Magma:
    """The isomorphic copy of X in which element x is renamed perm[x]."""
    p = np.asarray(perm)
    t = np.empty_like(X.table)
    t[np.ix_(p, p)] = p[X.table]
    return Magma(t)


# -- permutations of rows and columns --------------------------------------

def _is_perm_rows(t):
    n = t.shape[0]
    return bool(np.all(np.sort(t, axis=1) == np.arange(n)))


def is_left_quasigroup(X: Magma) -> bool:
    return _is_perm_rows(X.table)


def is_quasigroup(X: Magma) -> bool:
    return _is_perm_rows(X.table) and _is_perm_rows(X.table.T)


def left_division_table(X: Magma) -> np.ndarray:
    """D with D[x, y] = x\\y."""
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return np.argsort(X.table, axis=1)


def right_division_table(X: Magma) -> np.ndarray:
    """D with D[y, x] = y/x."""
    if not is_quasigroup(X):
        raise NotQuasigroup("table is not a latin square")
    # column x maps v -> v*x; invert it
    return np.argsort(X.table, axis=0)


def left_divide(X: Magma, x: int, y: int) -> int:
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    return int(np.flatnonzero(X.table[x] == y)[0])


def right_divide(X: Magma, y: int, x: int) -> int:
    if not is_quasigroup(X):
        raise NotQuasigroup("table is not a latin square")
    return int(np.flatnonzero(X.table[:, x] == y)[0])


# -- identities -------------------------------------------------------------

def satisfies_left_rump(X: Magma) -> bool:
    """(xy)(xz) = (yx)(yz) for all x, y, z."""
    t = X.table
    lhs = t[t[:, :, None], t[:, None, :]]      # [x, y, z] -> (xy)(xz)
    rhs = np.swapaxes(lhs, 0, 1)                  # [x, y, z] -> (yx)(yz)
    return bool(np.array_equal(lhs, rhs))


def satisfies_right_rump(X: Magma) -> bool:
    """(zx)(yx) = (zy)(xy) for all x, y, z."""
    return satisfies_left_rump(opposite(X))


def squaring_map(X: Magma) -> np.ndarray:
    return np.diagonal(X.table).copy()


def is_uniquely_2_divisible(X: Magma) -> bool:
    s = squaring_map(X)
    return len(set(s.tolist())) == X.order


def _cycle_length(row, c):
    m, y = 1, row[c]
    while y != c:
        y = row[y]
        m += 1
    return m


def square_root_iterative(X: Magma, c: int) -> int:
    """A square root of c built from the sequence c_0 = c, c_k = (c_{k-1}\\c) c_{k-1}.

    Under the left Rump identity c_k^2 = L_c^{k+1}(c), so once k+1 is the
    length of the L_c-cycle through c the element c_k squares to c.
    """
    t = X.table
    if not is_left_quasigroup(X):
        raise NotLeftQuasigroup("rows are not permutations")
    div = np.argsort(t, axis=1)
    m = _cycle_length(t[c], c)
    ck = c
    for k in range(1, m):
        ck = int(t[div[ck, c], ck])
    if t[ck, ck] != c:
        raise NoSquareRoot(f"iteration did not produce a square root of {c}")
    return int(ck)


def is_rumple(X: Magma) -> bool:
    return (is_left_quasigroup(X) and satisfies_left_rump(X)
            and is_uniquely_2_divisible(X))


def is_latin_rumple(X: Magma) -> bool:
    ok = is_quasigroup(X) and satisfies_left_rump(X)
    if ok:
        assert is_uniquely_2_divisible(X), "latin Rump quasigroup with non-bijective squaring"
    return ok


def is_both_sided_rumple(X: Magma) -> bool:
    ok = (is_left_quasigroup(X) and satisfies_left_rump(X)
          and satisfies_right_rump(X))
    if ok:
        assert is_quasigroup(X), "both-sided Rump left quasigroup that is not latin"
    return ok


def is_left_distributive(X: Magma) -> bool:
    """(xy)(xz) = x(yz)."""
    t = X.table
    lhs = t[t[:, :, None], t[:, None, :]]
    rhs = t[np.arange(X.order)[:, None, None], t[None, :, :]]
    return bool(np.array_equal(lhs, rhs))


def is_2_reductive(X: Magma) -> bool:
    """(xy)z = yz."""
    t = X.table
    return bool(np.array_equal(t[t], np.broadcast_to(t[None], (X.order,) * 3)))


def is_idempotent(X: Magma) -> bool:
    return bool(np.array_equal(squaring_map(X), np.arange(X.order)))


def is_rack(X: Magma) -> bool:
    return is_left_quasigroup(X) and is_left_distributive(X)


def is_quandle(X: Magma) -> bool:
    return is_rack(X) and is_idempotent(X)


def is_associative(X: Magma) -> bool:
    t = X.table
    return bool(np.array_equal(t[t], t[np.arange(X.order)[:, None, None], t[None]]))


def identity_element(X: Magma) -> Optional[int]:
    n = X.order
    for e in range(n):
        if np.array_equal(X.table[e], np.arange(n)) and np.array_equal(X.table[:, e], np.arange(n)):
            return e
    return None


def conjugation_quandle(group: Magma) -> Magma:
    """x*y = x y x^-1 in the group given by the table."""
    if not (is_quasigroup(group) and is_associative(group)) or identity_element(group) is None:
        raise NotAGroup("table is not a group")
    e = identity_element(group)
    t = group.table
    inv = np.array([int(np.flatnonzero(t[x] == e)[0]) for x in range(group.order)])
    a = np.arange(group.order)
    return Magma(t[t[a[:, None], a[None, :]], inv[:, None]])


# -- Delta, dual, opposite, isotopes ---------------------------------------

def delta_map(X: Magma) -> np.ndarray:
    """Array D[x, y] = (xy, yx)."""
    t = X.table
    return np.stack([t, t.T], axis=-1)


def is_delta_bijective(X: Magma) -> bool:
    d = delta_map(X)
    codes = d[..., 0] * X.order + d[..., 1]
    return len(np.unique(codes)) == X.order ** 2


def _sqrt_map(X):
    s = squaring_map(X)
    r = np.empty_like(s)
    r[s] = np.arange(X.order)
    return r


def delta_inverse(X: Magma) -> np.ndarray:
    """Array E[u, v] = ((u\\v^2)^(1/2), (v\\u^2)^(1/2)), the inverse of Delta."""
    if not is_rumple(X):
        raise NotRumple("delta_inverse needs a rumple")
    t = X.table
    div = left_division_table(X)
    root = _sqrt_map(X)
    sq = squaring_map(X)
    a = np.arange(X.order)
    first = root[div[a[:, None], sq[None, :]]]
    second = root[div[a[None, :], sq[:, None]]]
    E = np.stack([first, second], axis=-1)
    back = t[E[..., 0], E[..., 1]]
    assert np.array_equal(back, np.broadcast_to(a[:, None], back.shape))
    assert np.array_equal(t[E[..., 1], E[..., 0]], np.broadcast_to(a[None, :], back.shape))
    return E


def dual_rumple(X: Magma, _check: bool = True) -> Magma:
    """x*y = (x\\y^2)^(1/2)."""
    if not is_rumple(X):
        raise NotRumple("dual_rumple needs a rumple")
    div = left_division_table(X)
    root = _sqrt_map(X)
    sq = squaring_map(X)
    D = Magma(root[div[:, sq]])
    if _check:
        assert is_rumple(D)
        assert dual_rumple(D, _check=False) == X
    return D


def opposite(X: Magma) -> Magma:
    return Magma(X.table.T)


def principal_loop_isotope(X: Magma, e: int, f: int) -> Magma:
    """x o y = (x/e)(f\\y); a loop with identity f*e."""
    rdiv = right_division_table(X)
    ldiv = left_division_table(X)
    t = X.table
    L = Magma(t[rdiv[:, e][:, None], ldiv[f][None, :]])
    one = int(t[f, e])
    a = np.arange(X.order)
    assert np.array_equal(L.table[one], a) and np.array_equal(L.table[:, one], a)
    return L


# -- isomorphism --------------------------------------------------------------

def canonical_labeling_of(X: Magma):
    flat, lab = canonical_labeling(X.table)
    return Magma(flat.reshape(X.order, X.order)), lab


def canonical_form(X: Magma) -> Magma:
    """The lexicographically least row-major table among all relabelings."""
    return canonical_labeling_of(X)[0]


def _invariants(X: Magma):
    # relabeling-invariant colour of each element
    t = X.table
    n = X.order
    out = []
    for x in range(n):
        row = t[x]
        col = t[:, x]
        out.append((int(t[x, x] == x), len(set(row.tolist())), len(set(col.tolist())),
                    int(np.count_nonzero(t == x)),
                    _cycle_length(row, x) if sorted(row.tolist()) == list(range(n)) else 0))
    return out


def find_isomorphism(X: Magma, Y: Magma) -> Optional[np.ndarray]:
    """A permutation f with f(xy) = f(x)f(y), or None.

    Backtracking over images of one element at a time; every choice is
    closed under products before the next one is made.
    """
    n = X.order
    if Y.order != n:
        return None
    tx, ty = X.table, Y.table
    ix, iy = _invariants(X), _invariants(Y)
    if sorted(ix) != sorted(iy):
        return None

    def close(f, g, queue):
        # f: X -> Y partial, g its inverse; queue of newly mapped elements
        mapped = [x for x in range(n) if f[x] >= 0]
        while queue:
            a = queue.pop()
            for b in mapped + []:
                for u, v in ((a, b), (b, a)):
                    p, q = tx[u, v], ty[f[u], f[v]]
                    if f[p] < 0:
                        if g[q] >= 0 or ix[p] != iy[q]:
                            return False
                        f[p] = q
                        g[q] = p
                        mapped.append(p)
                        queue.append(p)
                    elif f[p] != q:
                        return False
        return True

    def rec(f, g):
        free = [x for x in range(n) if f[x] < 0]
        if not free:
            return f
        x = free[0]
        for y in range(n):
            if g[y] >= 0 or ix[x] != iy[y]:
                continue
            f2, g2 = f.copy(), g.copy()
            f2[x] = y
            g2[y] = x
            if close(f2, g2, [x]):
                res = rec(f2, g2)
                if res is not None:
                    return res
        return None

    f = rec(-np.ones(n, np.int64), -np.ones(n, np.int64))
    if f is not None:
        assert np.array_equal(ty[f[:, None], f[None, :]], f[tx])
    return f


def is_isomorphism(X: Magma, Y: Magma, f) -> bool:
    f = np.asarray(f)
    return bool(np.array_equal(Y.table[f[:, None], f[None, :]], f[X.table]))


# -- text format ------------------------------------------------------------

def dumps_mag(X: Magma) -> str:
    lines = [f"magma {X.order}"]
    lines += [" ".join(str(int(v)) for v in row) for row in X.table]
    return "\n".join(lines) + "\n"


def loads_mag(text: str) -> Magma:
    lines = text.split("\n")
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "magma" or not head[1].isdigit():
        raise ParseError("first line must be 'magma <n>'")
    n = int(head[1])
    if n < 1:
        raise ParseError("order must be positive")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} table rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != n or not all(p.isdigit() for p in parts):
            raise ParseError(f"line {k}: expected {n} non-negative integers")
        rows.append([int(p) for p in parts])
    try:
        return from_table(n, rows)
    except EntryOutOfRange as exc:
        raise ParseError(str(exc)) from exc
