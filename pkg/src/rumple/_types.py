"""Row types, their canonical row patterns and pattern centralizers."""

import itertools

import numpy as np

from rumple._engine import TYPE_BASE


def partitions(m, smallest=1):
    """Ascending integer partitions of ``m`` with parts >= ``smallest``."""
    if m == 0:
        yield ()
        return
    for k in range(smallest, m + 1):
        for rest in partitions(m - k, k):
            yield (k,) + rest


def row_types(n):
    """All row types of order ``n`` in increasing order.

    A type is ``(first, others)`` where ``first`` is the length of the cycle
    through the distinguished point and ``others`` the ascending lengths of
    the remaining cycles.
    """
    out = [(f, rest) for f in range(1, n + 1) for rest in partitions(n - f)]
    out.sort(key=lambda t: type_code(t, n))
    return out


def type_code(t, n):
    first, rest = t
    key = first
    for i in range(n):
        key = key * TYPE_BASE + (rest[i] if i < len(rest) else 0)
    return key


def pattern(t, n):
    """Lex-least permutation (as an image array) of type ``t`` with 0 first."""
    first, rest = t
    p = np.empty(n, np.int64)
    j = 0
    for m in (first,) + tuple(rest):
        for i in range(m):
            p[j + i] = j + (i + 1) % m
        j += m
    return p


def centralizer_size(t):
    _, rest = t
    size = 1
    for m in set(rest):
        k = rest.count(m)
        size *= m ** k
        for i in range(2, k + 1):
            size *= i
    return size


def iter_centralizer(t, n):
    """Every permutation commuting with ``pattern(t, n)`` that fixes 0.

    The first cycle is fixed pointwise; cycles of equal length are permuted
    among themselves and rotated independently.
    """
    first, rest = t
    blocks = {}
    j = first
    for m in rest:
        blocks.setdefault(m, []).append(j)
        j += m
    factors = []
    for m, starts in blocks.items():
        opts = []
        for perm in itertools.permutations(range(len(starts))):
            for rots in itertools.product(range(m), repeat=len(starts)):
                opts.append([(starts[a], starts[perm[a]], rots[a], m)
                             for a in range(len(starts))])
        factors.append(opts)
    for combo in itertools.product(*factors):
        g = np.arange(n, dtype=np.int64)
        for opt in combo:
            for src, dst, rot, m in opt:
                for i in range(m):
                    g[src + i] = dst + (i + rot) % m
        yield g


def centralizer(t, n, cap=None):
    """The centralizer as an (m, n) array, truncated to ``cap`` elements."""
    out = list(itertools.islice(iter_centralizer(t, n), cap))
    return np.array(out, dtype=np.int64).reshape(len(out), n)
