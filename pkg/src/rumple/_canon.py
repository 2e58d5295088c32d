"""Compiled lex-least relabeling of an arbitrary multiplication table."""

import numpy as np
from numba import njit


@njit(cache=True)
def canonical_labeling(T):
    """Return ``(flat, lab)`` where ``flat`` is the lexicographically least
    row-major table over all relabelings and ``lab[x]`` is the new label of x.

    Labels are handed out in order of first use.  A value that has no label
    yet always receives the next free one (any other choice is larger), so
    the only real choices are which element becomes label ``j`` when the
    scan of row 0 reaches column ``j`` with that label still free.
    """
    n = T.shape[0]
    nn = n * n
    lab = -np.ones(n, np.int64)
    elem = -np.ones(n, np.int64)
    best = np.zeros(nn, np.int64)
    best_lab = np.zeros(n, np.int64)
    have_best = False
    cur = np.zeros(nn, np.int64)
    s_c = np.zeros(n + 1, np.int64)
    s_k = np.zeros(n + 1, np.int64)
    s_next = np.zeros(n + 1, np.int64)
    s_less = np.zeros(n + 1, np.bool_)
    depth = 0
    c = 0
    k = 0
    less = False
    choose = False
    while True:
        if choose:
            if depth == 0:
                break
            top = depth - 1
            k0 = s_k[top]
            for lb in range(k0, k):
                lab[elem[lb]] = -1
                elem[lb] = -1
            k = k0
            c = s_c[top]
            less = s_less[top]
            e = s_next[top]
            while e < n and lab[e] >= 0:
                e += 1
            if e >= n:
                depth -= 1
                continue
            s_next[top] = e + 1
            lab[e] = k
            elem[k] = e
            k += 1
            choose = False
        # forced scan until a choice or a verdict
        failed = False
        branched = False
        while c < nn:
            i = c // n
            j = c - i * n
            if i >= k or j >= k:
                s_c[depth] = c
                s_k[depth] = k
                s_next[depth] = 0
                s_less[depth] = less
                depth += 1
                branched = True
                break
            v = T[elem[i], elem[j]]
            if lab[v] < 0:
                lab[v] = k
                elem[k] = v
                k += 1
            val = lab[v]
            cur[c] = val
            if have_best and not less:
                if val > best[c]:
                    failed = True
                    break
                if val < best[c]:
                    less = True
            c += 1
        if branched:
            choose = True
            continue
        if not failed and (not have_best or less):
            best[:] = cur
            best_lab[:] = lab
            have_best = True
            for d in range(depth):
                s_less[d] = False
        choose = True
    return best, best_lab
