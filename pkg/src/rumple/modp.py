"""Exact linear algebra over prime fields F_p with integer numpy arrays."""

import numpy as np

from rumple.errors import NotInvertible


def rref(M, p):
    """Reduced row echelon form and pivot columns; pivots chosen as the first
    nonzero entry so results are reproducible."""
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p) -> int:
    return len(rref(M, p)[1])


def nullspace(M, p):
    """Basis (as rows) of {x : M x = 0} over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(cols, np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def inverse(M, p):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise NotInvertible("matrix is singular mod %d" % p)
    return R[:, n:]


def det(M, p) -> int:
    """Determinant by elimination."""
    A = np.array(M, dtype=np.int64) % p
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            A[[c, k]] = A[[k, c]]
            d = -d
        d = d * int(A[c, c]) % p
        inv = pow(int(A[c, c]), -1, p)
        below = A[c + 1:, c] * inv % p
        A[c + 1:] = (A[c + 1:] - np.outer(below, A[c])) % p
    return d % p


def matpow(M, k, p):
    out = np.eye(M.shape[0], dtype=np.int64)
    for _ in range(k):
        out = out @ M % p
    return out
