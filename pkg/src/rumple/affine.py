"""Affine rumples x*y = phi(x) + psi(y) + c over finite abelian groups.

A group is a list of cyclic moduli ``(n_1, ..., n_k)``; elements are integer
vectors reduced coordinatewise and are indexed in lexicographic order (first
coordinate most significant).  An endomorphism is a k x k integer matrix
whose column j is the image of the j-th generator; row i is read mod n_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

import numpy as np

from rumple import modp
from rumple.core import Magma, find_isomorphism, is_latin_rumple, is_quasigroup
from rumple.errors import (BoundExceeded, CharMismatch, IncompatibleMatrix,
                           NotInvertible, NotLatinRumple, SingularB)
from rumple.permgroup import (PermGroup, dis, inverse, is_abelian,
                              is_normal_in, is_regular, mlt)

DEFAULT_BOUND = 10 ** 4


# -- groups ---------------------------------------------------------------------

def factorize(m: int) -> dict:
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _prime_of(q):
    (p, _), = factorize(q).items()
    return p


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple

    def __init__(self, factors: Sequence[int] = ()):
        fs = tuple(int(f) for f in factors)
        if any(f < 2 for f in fs):
            raise ValueError("cyclic factors must have order at least 2")
        object.__setattr__(self, "factors", fs)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        return int(np.prod(self.factors, dtype=np.int64)) if self.factors else 1

    @property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @property
    def strides(self) -> np.ndarray:
        s = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            s[i] = s[i + 1] * self.factors[i + 1]
        return s

    def elements(self) -> np.ndarray:
        return _elements(self.factors)

    def index(self, x) -> np.ndarray:
        """Lexicographic index of element vector(s) along the last axis."""
        x = np.asarray(x, dtype=np.int64) % self.moduli if self.rank else np.asarray(x)
        return (x * self.strides).sum(axis=-1) if self.rank else np.zeros(x.shape[:-1], np.int64)

    def reduce(self, x) -> np.ndarray:
        return np.asarray(x, dtype=np.int64) % self.moduli

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, np.int64)

    def is_elementary(self) -> bool:
        return self.rank > 0 and len(set(self.factors)) == 1 and len(factorize(self.factors[0])) == 1 \
            and list(factorize(self.factors[0]).values()) == [1]

    def normalized(self) -> "AbelianGroup":
        return AbelianGroup(normalize_factors(self.factors))


@lru_cache(maxsize=None)
def _elements(factors):
    if not factors:
        return np.zeros((1, 0), np.int64)
    grids = np.meshgrid(*[np.arange(f) for f in factors], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def normalize_factors(factors) -> tuple:
    """Primary decomposition: prime-power moduli sorted by prime, then size."""
    out = []
    for f in factors:
        for p, k in factorize(int(f)).items():
            out.append(p ** k)
    return tuple(sorted(out, key=lambda q: (_prime_of(q), q)))


def parse_group(text: str) -> AbelianGroup:
    text = text.strip()
    if text in ("", "1"):
        return AbelianGroup(())
    return AbelianGroup([int(t) for t in text.split(",")])


# -- endomorphisms -----------------------------------------------------------

def check_compatible(G: AbelianGroup, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64).reshape(G.rank, G.rank)
    n = G.moduli
    for i in range(G.rank):
        for j in range(G.rank):
            q = n[i] // gcd(int(n[i]), int(n[j]))
            if M[i, j] % q:
                raise IncompatibleMatrix(
                    f"entry ({i},{j}) must be a multiple of {q} for Z_{n[i]} <- Z_{n[j]}")
    return M % n[:, None] if G.rank else M


def endo_apply(G: AbelianGroup, M, x) -> np.ndarray:
    M = check_compatible(G, M)
    return _apply(G, M, x)


def _apply(G, M, x):
    x = np.asarray(x, dtype=np.int64)
    if G.rank == 0:
        return x
    return (x @ M.T) % G.moduli


def endo_compose(G: AbelianGroup, M, N) -> np.ndarray:
    """The endomorphism x -> M(N(x))."""
    M = check_compatible(G, M)
    N = check_compatible(G, N)
    return _compose(G, M, N)


def _compose(G, M, N):
    if G.rank == 0:
        return M
    return (M @ N) % G.moduli[:, None]


def _reduce(G, M):
    if G.rank == 0:
        return np.asarray(M, dtype=np.int64).reshape(0, 0)
    return np.asarray(M, dtype=np.int64) % G.moduli[:, None]


def identity_endo(G: AbelianGroup) -> np.ndarray:
    return np.eye(G.rank, dtype=np.int64)


def element_map(G: AbelianGroup, M) -> np.ndarray:
    """Index array of the induced map on elements."""
    return G.index(_apply(G, check_compatible(G, M), G.elements()))


def is_automorphism(G: AbelianGroup, M) -> bool:
    images = element_map(G, M)
    return len(np.unique(images)) == G.size


def endo_inverse(G: AbelianGroup, M) -> np.ndarray:
    images = element_map(G, M)
    if len(np.unique(images)) != G.size:
        raise NotInvertible("endomorphism is not bijective")
    pre = np.empty(G.size, np.int64)
    pre[images] = np.arange(G.size)
    E = G.elements()
    cols = [E[pre[G.index(np.eye(G.rank, dtype=np.int64)[j])]] for j in range(G.rank)]
    return np.array(cols, dtype=np.int64).T.reshape(G.rank, G.rank)


def endo_equal(G, M, N) -> bool:
    return bool(np.array_equal(_reduce(G, M), _reduce(G, N)))


# -- the affine construction --------------------------------------------------

@dataclass(frozen=True, eq=False)
class AffineDatum:
    group: AbelianGroup
    phi: np.ndarray
    psi: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        G = self.group
        object.__setattr__(self, "phi", check_compatible(G, self.phi))
        object.__setattr__(self, "psi", check_compatible(G, self.psi))
        c = np.asarray(self.c, dtype=np.int64).reshape(G.rank) % G.moduli if G.rank \
            else np.zeros(0, np.int64)
        object.__setattr__(self, "c", c)

    @property
    def psi_bijective(self) -> bool:
        return is_automorphism(self.group, self.psi)

    @property
    def latin_flags(self) -> bool:
        return self.psi_bijective and is_automorphism(self.group, self.phi)

    def key(self):
        return (self.group.factors, self.phi.tolist(), self.psi.tolist(), self.c.tolist())

    def __eq__(self, other):
        return isinstance(other, AffineDatum) and self.key() == other.key()

    def __hash__(self):
        return hash(repr(self.key()))

    def to_json(self) -> dict:
        return {"factors": list(self.group.factors), "phi": self.phi.tolist(),
                "psi": self.psi.tolist(), "c": self.c.tolist()}

    @classmethod
    def from_json(cls, obj) -> "AffineDatum":
        G = AbelianGroup(obj["factors"])
        return cls(G, np.array(obj["phi"], dtype=np.int64).reshape(G.rank, G.rank),
                   np.array(obj["psi"], dtype=np.int64).reshape(G.rank, G.rank), obj["c"])


def affine_datum(factors, phi, psi, c) -> AffineDatum:
    G = AbelianGroup(factors)
    k = G.rank
    return AffineDatum(G, np.array(phi, dtype=np.int64).reshape(k, k),
                       np.array(psi, dtype=np.int64).reshape(k, k), c)


def aff_to_magma(D: AffineDatum) -> Magma:
    """Table of x*y = phi(x) + psi(y) + c in lexicographic element order."""
    G = D.group
    E = G.elements()
    a = _apply(G, D.phi, E)
    b = _apply(G, D.psi, E)
    s = a[:, None, :] + b[None, :, :] + D.c
    return Magma(G.index(s))


def rump_condition(G: AbelianGroup, phi, psi) -> bool:
    """phi psi - psi phi = phi^2, cross-checked against the inverse forms."""
    A = check_compatible(G, phi)
    B = check_compatible(G, psi)
    ok = endo_equal(G, _compose(G, A, B) - _compose(G, B, A), _compose(G, A, A))
    if G.rank and is_automorphism(G, A) and is_automorphism(G, B):
        Ai, Bi = endo_inverse(G, A), endo_inverse(G, B)
        one = identity_endo(G)
        ok2 = endo_equal(G, _compose(G, B, Ai) - _compose(G, Ai, B), one)
        ok3 = endo_equal(G, _compose(G, Ai, Bi) - _compose(G, Bi, Ai), _compose(G, Bi, Bi))
        assert ok == ok2 == ok3
    return ok


def trace_conditions(p: int, n: int, A, B) -> bool:
    """tr A = tr A^2 = tr B^-1 = tr B^-2 = 0 over F_p."""
    A = np.asarray(A, dtype=np.int64).reshape(n, n) % p
    B = np.asarray(B, dtype=np.int64).reshape(n, n) % p
    modp.inverse(A, p)
    Bi = modp.inverse(B, p)
    mats = (A, A @ A % p, Bi, Bi @ Bi % p)
    return all(int(np.trace(m)) % p == 0 for m in mats)


# -- automorphism groups -------------------------------------------------------

def _frattini_invertible(G: AbelianGroup, mats: np.ndarray) -> np.ndarray:
    """Vectorized bijectivity test of many compatible matrices.

    For prime-power factors an endomorphism is bijective iff for each prime p
    the block of p-power coordinates is invertible mod p.
    """
    ok = np.ones(len(mats), bool)
    by_prime = {}
    for i, q in enumerate(G.factors):
        by_prime.setdefault(_prime_of(q), []).append(i)
    for p, idx in by_prime.items():
        sub = mats[:, idx][:, :, idx] % p
        ok &= _batch_det_nonzero(sub, p)
    return ok


def _batch_det_nonzero(mats, p):
    A = mats.copy() % p
    m, k, _ = A.shape
    alive = np.ones(m, bool)
    for c in range(k):
        col = A[:, c:, c]
        has = col != 0
        alive &= has.any(axis=1)
        piv = c + np.argmax(has, axis=1)
        rows = np.arange(m)
        tmp = A[rows, piv].copy()
        A[rows, piv] = A[rows, c]
        A[rows, c] = tmp
        lead = A[:, c, c]
        inv = np.array([pow(int(v), -1, p) if v else 0 for v in range(p)])[lead]
        f = A[:, c + 1:, c] * inv[:, None] % p
        A[:, c + 1:, :] = (A[:, c + 1:, :] - f[:, :, None] * A[:, c:c + 1, :]) % p
    return alive


@lru_cache(maxsize=None)
def _automorphisms(factors) -> np.ndarray:
    G = AbelianGroup(factors)
    k = G.rank
    if k == 0:
        return np.zeros((1, 0, 0), np.int64)
    n = G.moduli
    steps = [[int(n[i] // gcd(int(n[i]), int(n[j]))) for j in range(k)] for i in range(k)]
    counts = [[int(n[i] // steps[i][j]) for j in range(k)] for i in range(k)]
    choices = [np.arange(counts[i][j]) * steps[i][j] for i in range(k) for j in range(k)]
    total = int(np.prod([len(c) for c in choices], dtype=np.int64))
    out = []
    chunk = 1 << 18
    sizes = [len(c) for c in choices]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = np.empty((len(idx), k * k), np.int64)
        rest = idx.copy()
        for pos in range(k * k - 1, -1, -1):
            digits[:, pos] = choices[pos][rest % sizes[pos]]
            rest //= sizes[pos]
        mats = digits.reshape(-1, k, k)
        out.append(mats[_frattini_invertible(G, mats)])
    A = np.concatenate(out)
    A.setflags(write=False)
    return A


def automorphisms(G: AbelianGroup) -> np.ndarray:
    """All automorphisms of G as an (m, k, k) array; G must use prime-power factors."""
    if any(len(factorize(q)) != 1 for q in G.factors):
        raise ValueError("automorphisms() expects prime-power factors; normalize first")
    return _automorphisms(G.factors)


def _batch_compose(G, M, N):
    # M, N broadcastable stacks of matrices
    return np.einsum("...ij,...jk->...ik", M, N) % G.moduli[:, None]


def _keys(mats):
    if len(mats) == 0:
        return []
    m = np.ascontiguousarray(mats.reshape(len(mats), -1))
    return [r.tobytes() for r in m]


class _AutTable:
    """Automorphisms with fast inverse lookup."""

    def __init__(self, G: AbelianGroup):
        self.G = G
        self.mats = automorphisms(G)
        self.index = {k: i for i, k in enumerate(_keys(self.mats))}
        self._inv = None

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            inv = np.empty(len(self.mats), np.int64)
            done = np.zeros(len(self.mats), bool)
            eye = identity_endo(self.G)
            for i, M in enumerate(self.mats):
                if done[i]:
                    continue
                Mi = endo_inverse(self.G, M)
                j = self.index[Mi.tobytes()]
                inv[i], inv[j] = j, i
                done[i] = done[j] = True
                assert endo_equal(self.G, _compose(self.G, M, Mi), eye)
            self._inv = inv
        return self._inv

    def conjugates(self, M, subset=None) -> np.ndarray:
        """alpha M alpha^-1 for every alpha (or those in ``subset``)."""
        ids = np.arange(len(self.mats)) if subset is None else np.asarray(subset)
        al = self.mats[ids]
        ali = self.mats[self.inv[ids]]
        return _batch_compose(self.G, _batch_compose(self.G, al, M[None]), ali)


@lru_cache(maxsize=None)
def _aut_table(factors) -> _AutTable:
    return _AutTable(AbelianGroup(factors))


# -- isomorphism of affine data ---------------------------------------------------

def image_subgroup(G: AbelianGroup, M) -> np.ndarray:
    """Sorted element indices of M(G)."""
    return np.unique(element_map(G, M))


def to_presentation(D: AffineDatum, factors) -> AffineDatum:
    """Rewrite D over an isomorphic group with the given cyclic factors."""
    H = AbelianGroup(factors)
    if H.factors == D.group.factors:
        return D
    basis, orders = abelian_basis_of_vectors(D.group)
    want = list(H.factors)
    if sorted(orders) != sorted(want):
        raise ValueError("groups are not isomorphic")
    # match basis vectors to target factors by order
    used = [False] * len(orders)
    gens = []
    for q in want:
        j = next(j for j in range(len(orders)) if not used[j] and orders[j] == q)
        used[j] = True
        gens.append(basis[j])
    gens = np.array(gens, dtype=np.int64).reshape(H.rank, D.group.rank)
    # iota: H -> G, h -> sum h_i gens_i ; tabulate its inverse
    EH = H.elements()
    img = D.group.index((EH @ gens) % D.group.moduli if H.rank else EH)
    back = np.empty(D.group.size, np.int64)
    back[img] = np.arange(H.size)

    def pull(Mg):
        cols = []
        for i in range(H.rank):
            v = _apply(D.group, Mg, gens[i])
            cols.append(EH[back[D.group.index(v)]])
        return np.array(cols, dtype=np.int64).T.reshape(H.rank, H.rank)

    c = EH[back[D.group.index(D.c)]]
    return AffineDatum(H, pull(D.phi), pull(D.psi), c)


def normalize_datum(D: AffineDatum) -> AffineDatum:
    return to_presentation(D, normalize_factors(D.group.factors))


def drapal_isomorphic(D1: AffineDatum, D2: AffineDatum):
    """Witness (alpha, u) with phi2 = alpha phi1 alpha^-1, psi2 = alpha psi1 alpha^-1
    and c2 = alpha(c1 + u), u in Im(1 - phi1 - psi1); None when there is none.

    Data over different presentations of the same group are first rewritten
    over the primary decomposition, and the witness then refers to it.
    """
    if D1.group.size != D2.group.size:
        return None
    if normalize_factors(D1.group.factors) != normalize_factors(D2.group.factors):
        return None
    if D1.group.factors != D2.group.factors or any(len(factorize(q)) != 1 for q in D1.group.factors):
        D1, D2 = normalize_datum(D1), normalize_datum(D2)
    G = D1.group
    table = _aut_table(G.factors)
    conj_phi = table.conjugates(D1.phi)
    hits = np.flatnonzero(np.all(conj_phi == D2.phi[None], axis=(1, 2)))
    if len(hits) == 0:
        return None
    conj_psi = table.conjugates(D1.psi, hits)
    hits = hits[np.all(conj_psi == D2.psi[None], axis=(1, 2))]
    if len(hits) == 0:
        return None
    one = identity_endo(G)
    img = set(image_subgroup(G, _reduce(G, one - D1.phi - D1.psi)).tolist())
    E = G.elements()
    for a in hits:
        alpha = table.mats[a]
        pre = _apply(G, table.mats[table.inv[a]], D2.c)
        u = G.reduce(pre - D1.c)
        if int(G.index(u)) in img:
            assert np.array_equal(G.reduce(_apply(G, alpha, D1.c + u)), D2.c)
            return alpha, E[G.index(u)]
    return None


# -- enumeration ---------------------------------------------------------------

def _orbit_reps(table: _AutTable, cands: np.ndarray, subset=None):
    """Conjugacy-orbit representatives among ``cands`` (lex-least key kept)."""
    keys = _keys(cands)
    remaining = dict(zip(keys, range(len(cands))))
    reps = []
    for k in sorted(remaining):
        if k not in remaining:
            continue
        M = cands[remaining[k]]
        reps.append(M)
        for kk in _keys(table.conjugates(M, subset)):
            remaining.pop(kk, None)
    return reps


def _centralizer(table: _AutTable, M, subset=None) -> np.ndarray:
    ids = np.arange(len(table.mats)) if subset is None else np.asarray(subset)
    conj = table.conjugates(M, ids)
    return ids[np.all(conj == M[None], axis=(1, 2))]


def _trace_ok(G, mats):
    # tr A = tr A^2 = 0 is necessary for phi over an elementary abelian group
    p = G.factors[0]
    tr1 = np.trace(mats, axis1=1, axis2=2) % p
    sq = np.einsum("mij,mjk->mik", mats, mats) % p
    tr2 = np.trace(sq, axis1=1, axis2=2) % p
    return (tr1 == 0) & (tr2 == 0)


def affine_pairs(G: AbelianGroup, use_trace: bool = True):
    """Representatives (phi, psi, C) of automorphism pairs satisfying the Rump
    condition up to simultaneous conjugation; C indexes their common centralizer."""
    table = _aut_table(G.factors)
    auts = table.mats
    cand = auts
    if use_trace and G.is_elementary():
        cand = auts[_trace_ok(G, auts)]
    out = []
    for A in _orbit_reps(table, cand):
        # psi with A psi - psi A = A^2
        lhs = (np.einsum("ij,mjk->mik", A, auts) - np.einsum("mij,jk->mik", auts, A)) % G.moduli[:, None]
        good = np.all(lhs == _compose(G, A, A)[None], axis=(1, 2))
        psis = auts[good]
        if not len(psis):
            continue
        if use_trace and G.is_elementary():
            p = G.factors[0]
            keep = [trace_conditions(p, G.rank, A, B) for B in psis]
            assert all(keep), "Rump pair violating the trace conditions"
        C = _centralizer(table, A)
        for B in _orbit_reps(table, psis, C):
            out.append((A, B, _centralizer(table, B, C)))
    return out


def _constant_reps(G: AbelianGroup, A, B, stab, table: _AutTable):
    """Orbit representatives of constants c under c -> alpha(c + u)."""
    one = identity_endo(G)
    img = image_subgroup(G, _reduce(G, one - A - B))
    E = G.elements()
    N = G.size
    # coset label: least index in c + Im
    coset = np.full(N, -1, np.int64)
    for x in range(N):
        if coset[x] < 0:
            members = G.index(E[x] + E[img])
            coset[members] = members.min()
    maps = [G.index(_apply(G, table.mats[a], E)) for a in stab]
    seen = set()
    reps = []
    for x in range(N):
        r = coset[x]
        if r != x or r in seen:
            continue
        orbit = {int(coset[m[r]]) for m in maps} | {int(r)}
        seen |= orbit
        reps.append(E[r])
    return reps


def enumerate_affine_latin(G: AbelianGroup, bound: int = DEFAULT_BOUND,
                           use_trace: bool = True) -> list:
    """One datum per isomorphism class of affine latin rumples over G."""
    if G.size > bound:
        raise BoundExceeded(f"|G| = {G.size} exceeds the bound {bound}")
    H = G.normalized()
    if H.rank == 0:
        return [AffineDatum(H, np.zeros((0, 0)), np.zeros((0, 0)), np.zeros(0))]
    table = _aut_table(H.factors)
    out = []
    for A, B, stab in affine_pairs(H, use_trace):
        for c in _constant_reps(H, A, B, stab, table):
            out.append(AffineDatum(H, A, B, c))
    out.sort(key=lambda D: repr(D.key()))
    if H.factors != G.factors:
        try:
            out = [to_presentation(D, G.factors) for D in out]
        except ValueError:
            pass
    return out


# -- spectrum and the characteristic pair ----------------------------------------

def spectrum_admits(m: int) -> bool:
    """Whether some affine latin rumple has order m: every prime power p^k
    exactly dividing m has p | k."""
    if m < 1:
        raise ValueError("order must be positive")
    return all(k % p == 0 for p, k in factorize(m).items())


def circulant(vec) -> np.ndarray:
    """Circ(v): entry (i, j) is v[(j - i) mod n]."""
    v = np.asarray(vec, dtype=np.int64)
    n = len(v)
    i, j = np.indices((n, n))
    return v[(j - i) % n]


def lower_d(n: int, p: int) -> np.ndarray:
    """D with d_{i+1,i} = i (1-based) and zeros elsewhere."""
    D = np.zeros((n, n), np.int64)
    for i in range(1, n):
        D[i, i - 1] = i % p
    return D


def canonical_char_pair(n: int, p: int):
    if n < 1 or n % p:
        raise CharMismatch(f"{p} does not divide {n}")
    A = circulant([0] * (n - 1) + [1]) % p
    B = (np.eye(n, dtype=np.int64) - lower_d(n, p)) % p
    Ai = modp.inverse(A, p)
    modp.inverse(B, p)
    assert np.array_equal((B @ Ai - Ai @ B) % p, np.eye(n, dtype=np.int64))
    return A, B


def circulant_B(p: int, cvec) -> np.ndarray:
    cvec = list(cvec)
    if len(cvec) != p:
        raise ValueError("the c-vector must have length p")
    return (circulant(cvec) - lower_d(p, p)) % p


def circulant_det_formula(p: int, cvec) -> int:
    val = sum(int(v) for v in list(cvec)[:p - 1]) % p
    assert modp.det(circulant_B(p, cvec), p) == val
    return val


def build_cc_rumple(p: int, cvec, c=None) -> Magma:
    """Aff(Z_p^p, Circ(0,...,0,1), Circ(c) - D, c)."""
    if circulant_det_formula(p, cvec) == 0:
        raise SingularB("c_1 + ... + c_(p-1) vanishes mod p")
    A = circulant([0] * (p - 1) + [1])
    B = circulant_B(p, cvec)
    const = np.zeros(p, np.int64) if c is None else np.asarray(c, dtype=np.int64)
    X = aff_to_magma(AffineDatum(AbelianGroup([p] * p), A, B, const))
    assert is_latin_rumple(X)
    return X


def cc_datum(p: int, cvec, c=None) -> AffineDatum:
    A = circulant([0] * (p - 1) + [1])
    const = np.zeros(p, np.int64) if c is None else np.asarray(c, dtype=np.int64)
    return AffineDatum(AbelianGroup([p] * p), A, circulant_B(p, cvec), const)


# -- displacement-group tests and affinization ------------------------------------

def _require_latin(X):
    if not is_latin_rumple(X):
        raise NotLatinRumple("table is not a latin rumple")


def is_affine(X: Magma) -> bool:
    """Dis X is abelian and normal in Mlt X."""
    _require_latin(X)
    D = dis(X)
    out = is_abelian(D) and is_normal_in(D, mlt(X))
    if out:
        assert is_abelian_group_isotopic(X)
    return out


def is_group_isotopic(X: Magma) -> bool:
    """Dis X acts regularly."""
    _require_latin(X)
    return is_regular(dis(X))


def is_abelian_group_isotopic(X: Magma) -> bool:
    """Dis X is abelian."""
    _require_latin(X)
    out = is_abelian(dis(X))
    if out:
        assert is_group_isotopic(X)
    return out


def abelian_basis(elements, op, zero, key=lambda g: g):
    """Independent generators of a finite abelian group given by its elements.

    Returns ``(gens, orders)`` with prime-power orders such that the group is
    the direct sum of the cyclic subgroups.  For each prime the generators
    are chosen greedily by largest order modulo the part already built and
    then corrected so the new cyclic summand meets it trivially.
    """
    elements = list(elements)
    zk = key(zero)

    def mul(g, m):
        out = zero
        for _ in range(m):
            out = op(out, g)
        return out

    def order(g):
        m, h = 1, g
        while key(h) != zk:
            h = op(h, g)
            m += 1
        return m

    orders = {key(g): order(g) for g in elements}
    N = len(elements)
    gens, gorders = [], []
    for p in sorted(factorize(N)):
        P = [g for g in elements if len(factorize(orders[key(g)])) == 0
             or set(factorize(orders[key(g)])) == {p}]
        H = {zk: zero}
        while len(H) < len(P):
            best, best_m = None, 0
            for g in P:
                if key(g) in H:
                    continue
                m, h = 1, g
                while key(h) not in H:
                    h = op(h, g)
                    m += 1
                if m > best_m:
                    best, best_m = g, m
            target = key(mul(best, best_m))
            corr = next(h for h in H.values() if key(mul(h, best_m)) == target)
            # g' = best - corr, with best_m g' = 0
            inv_corr = next(h for h in H.values() if key(op(h, corr)) == zk)
            g2 = op(best, inv_corr)
            assert key(mul(g2, best_m)) == zk
            gens.append(g2)
            gorders.append(best_m)
            newH = {}
            cur = zero
            for _ in range(best_m):
                for h in H.values():
                    s = op(h, cur)
                    newH[key(s)] = s
                cur = op(cur, g2)
            H = newH
    return gens, gorders


def abelian_basis_of_vectors(G: AbelianGroup):
    E = [tuple(int(v) for v in e) for e in G.elements()]
    mod = G.factors

    def op(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, mod))

    gens, orders = abelian_basis(E, op, tuple([0] * G.rank))
    return [np.array(g, dtype=np.int64) for g in gens], orders


def affinize(X: Magma) -> Optional[AffineDatum]:
    """Affine representation over Dis X with base point 0, or None if X is
    not affine.

    phi and psi are conjugation by R_{ee} and by sigma = R_{ee} L_e R_e^-1,
    c = L_{ee} L_e^-1, and x -> L_x L_e^-1 is checked to be an isomorphism.
    """
    _require_latin(X)
    if not is_affine(X):
        return None
    n = X.order
    t = X.table
    e = 0
    ee = int(t[e, e])
    L = [t[x].copy() for x in range(n)]
    R = [t[:, x].copy() for x in range(n)]
    Le_inv = inverse(L[e])
    xi = [L[x][Le_inv] for x in range(n)]                 # L_x L_e^-1
    D = dis(X)
    elems = [tuple(p.tolist()) for p in D.elements]

    def op(a, b):
        a, b = np.array(a), np.array(b)
        return tuple(a[b].tolist())

    zero = tuple(range(n))
    gens, orders = abelian_basis(elems, op, zero)
    H = AbelianGroup(orders)
    # coordinates of every Dis element
    coord = {}
    for vec in H.elements():
        g = np.arange(n)
        for gi, k in zip(gens, vec):
            for _ in range(int(k)):
                g = np.array(gi)[g]
        coord[tuple(g.tolist())] = vec
    assert len(coord) == D.order == n

    def conj(f, g):
        return g[f[inverse(g)]]

    sigma = R[ee][L[e][inverse(R[e])]]
    assert np.array_equal(sigma, np.diagonal(t))

    def matrix_of(g):
        cols = [coord[tuple(conj(np.array(b), g).tolist())] for b in gens]
        return np.array(cols, dtype=np.int64).T.reshape(H.rank, H.rank)

    c = coord[tuple(L[ee][Le_inv].tolist())]
    out = AffineDatum(H, matrix_of(R[ee]), matrix_of(sigma), c)
    # xi is an isomorphism onto the affine table
    Y = aff_to_magma(out)
    f = np.array([int(H.index(coord[tuple(xi[x].tolist())])) for x in range(n)])
    assert np.array_equal(Y.table[f[:, None], f[None, :]], f[t])
    assert is_automorphism(H, out.psi)
    return out


def is_affine_over(X: Magma, D: AffineDatum) -> bool:
    return find_isomorphism(X, aff_to_magma(D)) is not None
