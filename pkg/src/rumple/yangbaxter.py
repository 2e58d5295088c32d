"""Set-theoretic solutions r(x, y) = (r1(x, y), r2(x, y)) of the Yang-Baxter
equation, and their correspondence with rumples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from rumple.core import (Magma, is_left_quasigroup, is_rack, is_rumple,
                         left_division_table, squaring_map)
from rumple.errors import (EntryOutOfRange, NotBirack, NotLeftNondegenerate,
                           NotRack, NotRumple)


@dataclass(frozen=True, eq=False)
class SetSolution:
    r1: np.ndarray
    r2: np.ndarray

    def __post_init__(self):
        a = np.array(self.r1, dtype=np.int64)
        b = np.array(self.r2, dtype=np.int64)
        n = a.shape[0]
        if a.shape != (n, n) or b.shape != (n, n):
            raise EntryOutOfRange("r1 and r2 must be n x n tables")
        if n and (min(a.min(), b.min()) < 0 or max(a.max(), b.max()) >= n):
            raise EntryOutOfRange(f"entries must lie in 0..{n - 1}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "r1", a)
        object.__setattr__(self, "r2", b)

    @property
    def n(self) -> int:
        return self.r1.shape[0]

    def __eq__(self, other):
        return (isinstance(other, SetSolution) and np.array_equal(self.r1, other.r1)
                and np.array_equal(self.r2, other.r2))

    def __hash__(self):
        return hash((self.r1.tobytes(), self.r2.tobytes()))

    def to_json(self) -> dict:
        return {"n": self.n, "r1": self.r1.tolist(), "r2": self.r2.tolist()}

    @classmethod
    def from_json(cls, obj) -> "SetSolution":
        s = cls(obj["r1"], obj["r2"])
        if int(obj["n"]) != s.n:
            raise EntryOutOfRange("n does not match the tables")
        return s


def flip(n: int) -> SetSolution:
    a = np.arange(n)
    return SetSolution(np.broadcast_to(a[None, :], (n, n)), np.broadcast_to(a[:, None], (n, n)))


def rumple_to_solution(X: Magma) -> SetSolution:
    """r(x, y) = (x\\y, (x\\y) x)."""
    if not is_rumple(X):
        raise NotRumple("rumple_to_solution needs a rumple")
    d = left_division_table(X)
    a = np.arange(X.order)
    s = SetSolution(d, X.table[d, a[:, None]])
    assert satisfies_yb(s) and is_involutive(s) and is_nondegenerate(s)
    return s


def solution_to_rumple(s: SetSolution) -> Magma:
    """x*y = z exactly when r1(x, z) = y."""
    if not is_left_nondegenerate(s):
        raise NotLeftNondegenerate("rows of r1 are not permutations")
    return Magma(np.argsort(s.r1, axis=1))


def _apply(s, u, v):
    return s.r1[u, v], s.r2[u, v]


def satisfies_yb(s: SetSolution) -> bool:
    """(r x 1)(1 x r)(r x 1) = (1 x r)(r x 1)(1 x r) on all triples."""
    n = s.n
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")

    def r12(a, b, c):
        p, q = _apply(s, a, b)
        return p, q, c

    def r23(a, b, c):
        p, q = _apply(s, b, c)
        return a, p, q

    lhs = r12(*r23(*r12(x, y, z)))
    rhs = r23(*r12(*r23(x, y, z)))
    return all(np.array_equal(u, v) for u, v in zip(lhs, rhs))


def is_involutive(s: SetSolution) -> bool:
    a, b = s.r1, s.r2
    return bool(np.array_equal(a[a, b], np.arange(s.n)[:, None] + 0 * a)
                and np.array_equal(b[a, b], np.arange(s.n)[None, :] + 0 * a))


def _rows_are_perms(t):
    return bool(np.all(np.sort(t, axis=1) == np.arange(t.shape[0])))


def is_left_nondegenerate(s: SetSolution) -> bool:
    """Each y -> r1(x, y) is a permutation."""
    return _rows_are_perms(s.r1)


def is_right_nondegenerate(s: SetSolution) -> bool:
    """Each x -> r2(x, y) is a permutation."""
    return _rows_are_perms(s.r2.T)


def is_nondegenerate(s: SetSolution) -> bool:
    return is_left_nondegenerate(s) and is_right_nondegenerate(s)


def is_bijective(s: SetSolution) -> bool:
    codes = s.r1 * s.n + s.r2
    return len(np.unique(codes)) == s.n ** 2


def _latin(t):
    return _rows_are_perms(t) and _rows_are_perms(t.T)


def tables_are_latin(s: SetSolution):
    return _latin(s.r1), _latin(s.r2)


def is_biquandle(s: SetSolution) -> Optional[np.ndarray]:
    """A permutation t with r(t(x), x) = (t(x), x) for every x, or None.

    Candidates are collected per x and a permutation is picked by bipartite
    matching, since several u may satisfy the condition for a single x.
    """
    if not (is_bijective(s) and is_nondegenerate(s)):
        raise NotBirack("solution is not a nondegenerate bijection")
    n = s.n
    cand = []
    for x in range(n):
        us = [u for u in range(n) if s.r1[u, x] == u and s.r2[u, x] == x]
        if not us:
            return None
        cand.append(us)
    match_of = [-1] * n          # u -> x

    def augment(x, seen):
        for u in cand[x]:
            if u in seen:
                continue
            seen.add(u)
            if match_of[u] < 0 or augment(match_of[u], seen):
                match_of[u] = x
                return True
        return False

    for x in range(n):
        if not augment(x, set()):
            return None
    t = np.empty(n, np.int64)
    for u, x in enumerate(match_of):
        t[x] = u
    return t


def square_root_permutation(X: Magma) -> np.ndarray:
    """sigma^-1, i.e. x -> x^(1/2)."""
    s = squaring_map(X)
    r = np.empty_like(s)
    r[s] = np.arange(X.order)
    return r


def rack_solution_check(X: Magma) -> bool:
    """The solution r(x, y) = (x\\y, x) of a rack satisfies YB and r2(x, y) = x."""
    if not is_rack(X):
        raise NotRack("table is not a rack")
    d = left_division_table(X)
    n = X.order
    s = SetSolution(d, np.broadcast_to(np.arange(n)[:, None], (n, n)))
    return satisfies_yb(s) and bool(np.all(s.r2 == np.arange(n)[:, None]))


def r2_for(X: Magma, r2) -> SetSolution:
    """The map (x\\y, r2(x, y)) for a left quasigroup and a given second leg."""
    if not is_left_quasigroup(X):
        raise NotLeftNondegenerate("rows are not permutations")
    return SetSolution(left_division_table(X), r2)
