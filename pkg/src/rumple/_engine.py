"""Compiled backtracking kernel behind :mod:`rumple.search`.

The kernel fills an order-n table cell by cell in row-major order and keeps
the left Rump identity closed under propagation: once the four cells
``xy, yx, xz, yz`` are known, the outer cells ``(xy)(xz)`` and ``(yx)(yz)``
are linked and an assignment to one of them is copied to the other.

Isomorphism rejection is exact.  Row 0 is pinned to the lex-least conjugate
pattern of a fixed row type (see :func:`type_key`) and every other row must
have a type at least as large.  The relabelings that can still reproduce
row 0 are the centralizer of that pattern (``group``) and, for every other
row of the same type, one coset of it.  Each of them is tracked with a
cursor into the flattened table; a relabeling producing a smaller table
prunes the node.  Leaves are therefore exactly the lexicographically least
tables of their isomorphism classes.
"""

import numpy as np
from numba import njit

TYPE_BASE = 16


@njit(cache=True)
def type_key(row, x, n):
    """Integer key ordering rows by their lex-least conjugate with ``x -> 0``.

    The key is the length of the cycle of ``x`` followed by the ascending
    lengths of the remaining cycles, read as base-16 digits.
    """
    seen = np.zeros(n, np.bool_)
    seen[x] = True
    first = 1
    y = row[x]
    while y != x:
        seen[y] = True
        y = row[y]
        first += 1
    lens = np.zeros(n, np.int64)
    m = 0
    for s in range(n):
        if not seen[s]:
            c = 0
            y = s
            while not seen[y]:
                seen[y] = True
                y = row[y]
                c += 1
            lens[m] = c
            m += 1
    lens[:m].sort()
    key = first
    for i in range(n):
        key = key * TYPE_BASE + (lens[i] if i < m else 0)
    return key


@njit(cache=True)
def _align(row, x, pattern, n, out):
    # out: relabeling p with p[x] = 0 and p row p^-1 = pattern (types equal)
    done = np.zeros(n, np.bool_)
    y = x
    lab = 0
    while True:
        out[y] = lab
        done[y] = True
        lab += 1
        y = row[y]
        if y == x:
            break
    # remaining cycles by ascending length; pattern blocks are consecutive
    while lab < n:
        m = 0
        j = lab
        while True:
            m += 1
            j = pattern[j]
            if j == lab:
                break
        best = -1
        for s in range(n):
            if not done[s]:
                c = 1
                y = row[s]
                while y != s:
                    c += 1
                    y = row[y]
                if c == m:
                    best = s
                    break
        y = best
        while True:
            out[y] = lab
            done[y] = True
            lab += 1
            y = row[y]
            if y == best:
                break


@njit(cache=True)
def _assign(u, v, w, T, inv, colinv, rowcnt, colcnt, owner, trail, tlen,
            n, latin, implied):
    cur = T[u, v]
    if cur >= 0:
        return (cur == w), tlen
    if inv[u, w] >= 0:
        return False, tlen
    if latin and colinv[v, w] >= 0:
        return False, tlen
    if implied:
        # Delta-injectivity: (xy, yx) pairs are pairwise distinct
        if u == v:
            if owner[w, w] >= 0:
                return False, tlen
        else:
            b = T[v, u]
            if b >= 0:
                # distinct elements never commute
                if b == w or owner[w, b] >= 0 or owner[b, w] >= 0:
                    return False, tlen
    T[u, v] = w
    inv[u, w] = v
    if latin:
        colinv[v, w] = u
    rowcnt[u] += 1
    colcnt[v] += 1
    if implied:
        if u == v:
            owner[w, w] = u * n + v
        else:
            b = T[v, u]
            if b >= 0:
                owner[w, b] = u * n + v
                owner[b, w] = v * n + u
    trail[tlen] = u * n + v
    return True, tlen + 1


@njit(cache=True)
def _undo(mark, T, inv, colinv, rowcnt, colcnt, owner, trail, tlen, n,
          latin, implied):
    while tlen > mark:
        tlen -= 1
        cell = trail[tlen]
        u = cell // n
        v = cell % n
        w = T[u, v]
        if implied:
            if u == v:
                owner[w, w] = -1
            else:
                b = T[v, u]
                if b >= 0:
                    owner[w, b] = -1
                    owner[b, w] = -1
        T[u, v] = -1
        inv[u, w] = -1
        if latin:
            colinv[v, w] = -1
        rowcnt[u] -= 1
        colcnt[v] -= 1
    return tlen


@njit(cache=True)
def _link(p, q, r, s, T, inv, colinv, rowcnt, colcnt, owner, trail, tlen,
          n, latin, implied):
    a = T[p, q]
    b = T[r, s]
    if a >= 0:
        if b >= 0:
            return a == b, tlen
        return _assign(r, s, a, T, inv, colinv, rowcnt, colcnt, owner,
                       trail, tlen, n, latin, implied)
    if b >= 0:
        return _assign(p, q, b, T, inv, colinv, rowcnt, colcnt, owner,
                       trail, tlen, n, latin, implied)
    return True, tlen


@njit(cache=True)
def _propagate(qhead, T, inv, colinv, rowcnt, colcnt, owner, trail, tlen,
               n, latin, implied):
    while qhead < tlen:
        cell = trail[qhead]
        qhead += 1
        u = cell // n
        v = cell % n
        w = T[u, v]
        ok = True
        # (u, v) as the pair cell xy with x=u, y=v
        if u != v:
            b = T[v, u]
            if b >= 0:
                for z in range(n):
                    c = T[u, z]
                    d = T[v, z]
                    if c >= 0 and d >= 0:
                        ok, tlen = _link(w, c, b, d, T, inv, colinv, rowcnt,
                                         colcnt, owner, trail, tlen, n,
                                         latin, implied)
                        if not ok:
                            return False, qhead, tlen
        # (u, v) as the inner cell xz with x=u, z=v
        for y in range(n):
            if y == u:
                continue
            a = T[u, y]
            if a < 0:
                continue
            b = T[y, u]
            if b < 0:
                continue
            d = T[y, v]
            if d < 0:
                continue
            ok, tlen = _link(a, w, b, d, T, inv, colinv, rowcnt, colcnt,
                             owner, trail, tlen, n, latin, implied)
            if not ok:
                return False, qhead, tlen
        # (u, v) as the outer cell (xy)(xz)
        for x in range(n):
            y = inv[x, u]
            if y < 0 or y == x:
                continue
            z = inv[x, v]
            if z < 0:
                continue
            b = T[y, x]
            if b < 0:
                continue
            d = T[y, z]
            if d < 0:
                continue
            ok, tlen = _link(u, v, b, d, T, inv, colinv, rowcnt, colcnt,
                             owner, trail, tlen, n, latin, implied)
            if not ok:
                return False, qhead, tlen
        # naked singles
        if rowcnt[u] == n - 1:
            col = -1
            for j in range(n):
                if T[u, j] < 0:
                    col = j
                    break
            val = -1
            for s in range(n):
                if inv[u, s] < 0:
                    val = s
                    break
            ok, tlen = _assign(u, col, val, T, inv, colinv, rowcnt, colcnt,
                               owner, trail, tlen, n, latin, implied)
            if not ok:
                return False, qhead, tlen
        if latin and colcnt[v] == n - 1:
            row = -1
            for i in range(n):
                if T[i, v] < 0:
                    row = i
                    break
            val = -1
            for s in range(n):
                if colinv[v, s] < 0:
                    val = s
                    break
            ok, tlen = _assign(row, v, val, T, inv, colinv, rowcnt, colcnt,
                               owner, trail, tlen, n, latin, implied)
            if not ok:
                return False, qhead, tlen
    return True, qhead, tlen


@njit(cache=True)
def _grow(a, need):
    if need <= a.shape[0]:
        return a
    b = np.empty(max(need, 2 * a.shape[0]), a.dtype)
    b[:a.shape[0]] = a
    return b


@njit(cache=True)
def search(n, latin, implied, pattern, tkey, group, group_inv, prefix,
           split, node_cap):
    """Enumerate canonical tables whose row 0 equals ``pattern``.

    ``prefix`` holds rows 1..k preassigned (shape (k, n); k may be 0).  With
    ``split`` true the search stops as soon as row 1 is complete and reports
    row 1 instead of a full table.  A negative ``node_cap`` means no limit.
    Returns ``(tables, count, nodes, aborted)`` where ``tables`` has shape
    (count, n, n), or (count, 1, n) when splitting.
    """
    nn = n * n
    T = -np.ones((n, n), np.int8)
    inv = -np.ones((n, n), np.int8)
    colinv = -np.ones((n, n), np.int8)
    rowcnt = np.zeros(n, np.int64)
    colcnt = np.zeros(n, np.int64)
    owner = -np.ones((n, n), np.int64)
    trail = np.zeros(nn + 1, np.int64)
    tlen = 0
    out_rows = 1 if split else n
    out = np.zeros((16, out_rows, n), np.int8)
    count = 0
    nodes = 0

    gsize = group.shape[0]
    # coset bases: base[x] maps x -> 0 and conjugates row x onto the pattern
    base = np.zeros((n, n), np.int64)
    base_inv = np.zeros((n, n), np.int64)
    has_base = np.zeros(n, np.bool_)
    for i in range(n):
        base[0, i] = i
        base_inv[0, i] = i
    has_base[0] = True
    # pending relabelings: (row x, group index g, cursor)
    act_x = np.zeros(1024, np.int64)
    act_g = np.zeros(1024, np.int64)
    act_c = np.zeros(1024, np.int64)

    # per-depth frames
    maxd = nn + 2
    f_cell = np.zeros(maxd, np.int64)
    f_next = np.zeros(maxd, np.int64)
    f_mark = np.zeros(maxd, np.int64)
    f_lo = np.zeros(maxd, np.int64)
    f_hi = np.zeros(maxd, np.int64)
    f_complete = np.zeros((maxd, n), np.bool_)
    complete = np.zeros(n, np.bool_)
    tmp = np.zeros(n, np.int64)

    ok = True
    for j in range(n):
        ok, tlen = _assign(0, j, pattern[j], T, inv, colinv, rowcnt, colcnt,
                           owner, trail, tlen, n, latin, implied)
        if not ok:
            break
    if ok:
        for r in range(prefix.shape[0]):
            for j in range(n):
                ok, tlen = _assign(r + 1, j, prefix[r, j], T, inv, colinv,
                                   rowcnt, colcnt, owner, trail, tlen, n,
                                   latin, implied)
                if not ok:
                    break
            if not ok:
                break
    if ok:
        ok, _, tlen = _propagate(0, T, inv, colinv, rowcnt, colcnt, owner,
                                 trail, tlen, n, latin, implied)
    if not ok:
        return out[:0], 0, 0, False

    # the root frame's list: the pattern's centralizer minus the identity
    hi = 0
    act_x = _grow(act_x, gsize)
    act_g = _grow(act_g, gsize)
    act_c = _grow(act_c, gsize)
    for g in range(gsize):
        ident = True
        for i in range(n):
            if group[g, i] != i:
                ident = False
                break
        if not ident:
            act_x[hi] = 0
            act_g[hi] = g
            act_c[hi] = n
            hi += 1
    lo = 0
    new_lo = 0
    new_hi = 0
    depth = -1
    fresh = True  # the root state still needs its checks

    while True:
        if fresh:
            fresh = False
            nodes += 1
            if node_cap >= 0 and nodes > node_cap:
                return out[:count], count, nodes, True
            # row types and new cosets
            good = True
            for x in range(n):
                if not complete[x] and rowcnt[x] == n:
                    complete[x] = True
                    for j in range(n):
                        tmp[j] = T[x, j]
                    k = type_key(tmp, x, n)
                    if k < tkey:
                        good = False
                        break
                    if k == tkey and not has_base[x]:
                        has_base[x] = True
                        _align(tmp, x, pattern, n, base[x])
                        for i in range(n):
                            base_inv[x, base[x, i]] = i
                        act_x = _grow(act_x, hi + gsize)
                        act_g = _grow(act_g, hi + gsize)
                        act_c = _grow(act_c, hi + gsize)
                        for g in range(gsize):
                            act_x[hi] = x
                            act_g[hi] = g
                            act_c[hi] = n
                            hi += 1
            # lex-leader filter: entries [lo, hi) -> [hi, new_hi)
            if good:
                act_x = _grow(act_x, 2 * hi - lo + 1)
                act_g = _grow(act_g, 2 * hi - lo + 1)
                act_c = _grow(act_c, 2 * hi - lo + 1)
                w = hi
                for e in range(lo, hi):
                    x = act_x[e]
                    g = act_g[e]
                    c = act_c[e]
                    drop = False
                    while c < nn:
                        i = c // n
                        j = c - i * n
                        tv = T[i, j]
                        if tv < 0:
                            break
                        pi_ = base_inv[x, group_inv[g, i]]
                        pj = base_inv[x, group_inv[g, j]]
                        sv = T[pi_, pj]
                        if sv < 0:
                            break
                        rv = group[g, base[x, sv]]
                        if rv < tv:
                            good = False
                            break
                        if rv > tv:
                            drop = True
                            break
                        c += 1
                    if not good:
                        break
                    if drop or c >= nn:
                        continue
                    act_x[w] = x
                    act_g[w] = g
                    act_c[w] = c
                    w += 1
                new_lo = hi
                new_hi = w
            if good:
                if split and rowcnt[1] == n:
                    if count == out.shape[0]:
                        bigger = np.zeros((2 * count, out_rows, n), np.int8)
                        bigger[:count] = out
                        out = bigger
                    for j in range(n):
                        out[count, 0, j] = T[1, j]
                    count += 1
                    good = False
                else:
                    cell = -1
                    for c in range(nn):
                        if T[c // n, c % n] < 0:
                            cell = c
                            break
                    if cell < 0:
                        if count == out.shape[0]:
                            bigger = np.zeros((2 * count, out_rows, n), np.int8)
                            bigger[:count] = out
                            out = bigger
                        out[count] = T
                        count += 1
                        good = False
                    else:
                        depth += 1
                        f_cell[depth] = cell
                        f_next[depth] = 0
                        f_mark[depth] = tlen
                        f_lo[depth] = new_lo
                        f_hi[depth] = new_hi
                        for x in range(n):
                            f_complete[depth, x] = complete[x]
            if not good and depth < 0:
                break
        # try the next value at the current frame
        if depth < 0:
            break
        tlen = _undo(f_mark[depth], T, inv, colinv, rowcnt, colcnt, owner,
                     trail, tlen, n, latin, implied)
        for x in range(n):
            complete[x] = f_complete[depth, x]
        # cosets added below this frame are discarded with their rows
        for x in range(1, n):
            if has_base[x] and not complete[x]:
                has_base[x] = False
        cell = f_cell[depth]
        i = cell // n
        j = cell - i * n
        w = f_next[depth]
        while w < n:
            if inv[i, w] < 0 and not (latin and colinv[j, w] >= 0):
                break
            w += 1
        if w >= n:
            depth -= 1
            continue
        f_next[depth] = w + 1
        mark = tlen
        ok, tlen = _assign(i, j, w, T, inv, colinv, rowcnt, colcnt, owner,
                           trail, tlen, n, latin, implied)
        if ok:
            ok, _, tlen = _propagate(mark, T, inv, colinv, rowcnt, colcnt,
                                     owner, trail, tlen, n, latin, implied)
        if not ok:
            continue
        lo = f_lo[depth]
        hi = f_hi[depth]
        fresh = True

    return out[:count], count, nodes, False
