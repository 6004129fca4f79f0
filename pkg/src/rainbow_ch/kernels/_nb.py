"""Numba-compiled search kernels on one-word (uint64) bitsets, n <= 64.

Explicit-stack ports of the recursive kernels in ``_py``.  Branch order is
identical, so both backends return the same witness and node count.
"""

from __future__ import annotations

import numpy as np
from numba import njit

ZERO = np.uint64(0)
ONE = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


@njit(cache=True, inline="always")
def popcount(x):
    x = x - ((x >> ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, inline="always")
def lowest_index(x):
    low = x & (~x + ONE)
    return popcount(low - ONE)


@njit(cache=True)
def live_mask(adj, free):
    live = ZERO
    rest = free
    while rest != ZERO:
        low = rest & (~rest + ONE)
        v = popcount(low - ONE)
        rest ^= low
        if (live >> np.uint64(v)) & ONE:
            continue
        nb = adj[v] & free
        cand = nb
        while cand != ZERO:
            lb = cand & (~cand + ONE)
            u = popcount(lb - ONE)
            cand ^= lb
            common = adj[u] & nb
            if common != ZERO:
                lc = common & (~common + ONE)
                live |= low | lb | lc
                break
    return live


@njit(cache=True)
def nonisolated(adj, free):
    count = 0
    rest = free
    while rest != ZERO:
        low = rest & (~rest + ONE)
        v = popcount(low - ONE)
        rest ^= low
        if adj[v] & free:
            count += 1
    return count


@njit(cache=True)
def triangles_by_lowest(adj):
    n = adj.shape[0]
    count = 0
    for a in range(n):
        hi = (adj[a] >> np.uint64(a + 1)) << np.uint64(a + 1)
        rest = hi
        while rest != ZERO:
            lb = rest & (~rest + ONE)
            b = popcount(lb - ONE)
            rest ^= lb
            common = hi & ((adj[b] >> np.uint64(b + 1)) << np.uint64(b + 1))
            count += popcount(common)
    abc = np.empty((count, 3), dtype=np.int64)
    masks = np.empty(count, dtype=np.uint64)
    start = np.zeros(n + 1, dtype=np.int64)
    k = 0
    for a in range(n):
        start[a] = k
        hi = (adj[a] >> np.uint64(a + 1)) << np.uint64(a + 1)
        rest = hi
        while rest != ZERO:
            lb = rest & (~rest + ONE)
            b = popcount(lb - ONE)
            rest ^= lb
            common = hi & ((adj[b] >> np.uint64(b + 1)) << np.uint64(b + 1))
            while common != ZERO:
                lc = common & (~common + ONE)
                c = popcount(lc - ONE)
                common ^= lc
                abc[k, 0] = a
                abc[k, 1] = b
                abc[k, 2] = c
                masks[k] = (ONE << np.uint64(a)) | lb | lc
                k += 1
    start[n] = k
    return abc, masks, start


@njit(cache=True)
def max_tiling(adj, budget, target):
    n = adj.shape[0]
    abc, tmask, start = triangles_by_lowest(adj)
    full = (ONE << np.uint64(n)) - ONE if n < 64 else ~ZERO
    ceiling = popcount(live_mask(adj, full)) // 3
    goal = ceiling if target < 0 else min(target, ceiling)
    best = 0
    best_path = np.empty(n, dtype=np.int64)
    nodes = 0
    complete = True
    if goal > 0:
        free = np.zeros(n + 2, dtype=np.uint64)
        cnt = np.zeros(n + 2, dtype=np.int64)
        ptr = np.zeros(n + 2, dtype=np.int64)
        end = np.zeros(n + 2, dtype=np.int64)
        vv = np.zeros(n + 2, dtype=np.int64)
        skip = np.zeros(n + 2, dtype=np.int64)
        path = np.full(n + 2, -1, dtype=np.int64)
        d = 0
        free[0] = full
        enter = True
        while d >= 0:
            if enter:
                enter = False
                nodes += 1
                if nodes > budget:
                    complete = False
                    break
                c = cnt[d]
                if c > best:
                    best = c
                    k = 0
                    for j in range(d):
                        if path[j] >= 0:
                            best_path[k] = path[j]
                            k += 1
                    if best >= goal:
                        break
                live = live_mask(adj, free[d])
                if c + popcount(live) // 3 <= best:
                    d -= 1
                    continue
                v = lowest_index(live)
                vv[d] = v
                ptr[d] = start[v]
                end[d] = start[v + 1]
                skip[d] = 0
            fr = free[d]
            p = ptr[d]
            while p < end[d] and (tmask[p] & fr) != tmask[p]:
                p += 1
            if p < end[d]:
                ptr[d] = p + 1
                path[d] = p
                free[d + 1] = fr & ~tmask[p]
                cnt[d + 1] = cnt[d] + 1
                d += 1
                enter = True
                continue
            ptr[d] = p
            if skip[d] == 0:
                skip[d] = 1
                path[d] = -1
                free[d + 1] = fr & ~(ONE << np.uint64(vv[d]))
                cnt[d + 1] = cnt[d]
                d += 1
                enter = True
                continue
            d -= 1
    out = np.empty((best, 3), dtype=np.int64)
    for j in range(best):
        out[j, :] = abc[best_path[j], :]
    return best, out, nodes, complete


@njit(cache=True)
def maximal_triple(adj, budget):
    n = adj.shape[0]
    abc, tmask, start = triangles_by_lowest(adj)
    full = (ONE << np.uint64(n)) - ONE if n < 64 else ~ZERO
    root_t = popcount(live_mask(adj, full)) // 3
    root_ni = nonisolated(adj, full)
    best_t = -1
    best_m = -1
    best_kind = np.empty(n + 1, dtype=np.int64)
    best_item = np.empty(n + 1, dtype=np.int64)
    best_v = np.empty(n + 1, dtype=np.int64)
    best_len = 0

    free = np.zeros(n + 2, dtype=np.uint64)
    tt = np.zeros(n + 2, dtype=np.int64)
    mm = np.zeros(n + 2, dtype=np.int64)
    vv = np.zeros(n + 2, dtype=np.int64)
    stage = np.zeros(n + 2, dtype=np.int64)
    ptr = np.zeros(n + 2, dtype=np.int64)
    end = np.zeros(n + 2, dtype=np.int64)
    nbrem = np.zeros(n + 2, dtype=np.uint64)
    kind = np.zeros(n + 2, dtype=np.int64)
    item = np.zeros(n + 2, dtype=np.int64)

    nodes = 0
    complete = True
    d = 0
    free[0] = full
    enter = True
    while d >= 0:
        if enter:
            enter = False
            nodes += 1
            if nodes > budget:
                complete = False
                break
            fr = free[d]
            t = tt[d]
            m = mm[d]
            if fr == ZERO:
                if t > best_t or (t == best_t and m > best_m):
                    best_t = t
                    best_m = m
                    best_len = d
                    for j in range(d):
                        best_kind[j] = kind[j]
                        best_item[j] = item[j]
                        best_v[j] = vv[j]
                    if t == root_t and m == (root_ni - 3 * t) // 2:
                        break
                d -= 1
                continue
            live = live_mask(adj, fr)
            ub_t = t + popcount(live) // 3
            if ub_t < best_t:
                d -= 1
                continue
            if ub_t == best_t:
                k = best_t - t
                if m + (nonisolated(adj, fr) - 3 * k) // 2 <= best_m:
                    d -= 1
                    continue
            v = lowest_index(fr)
            vv[d] = v
            stage[d] = 0
            ptr[d] = start[v]
            end[d] = start[v + 1]
            nbrem[d] = adj[v] & fr
        fr = free[d]
        v = vv[d]
        vbit = ONE << np.uint64(v)
        if stage[d] == 0:
            p = ptr[d]
            while p < end[d] and (tmask[p] & fr) != tmask[p]:
                p += 1
            if p < end[d]:
                ptr[d] = p + 1
                kind[d] = 0
                item[d] = p
                free[d + 1] = fr & ~tmask[p]
                tt[d + 1] = tt[d] + 1
                mm[d + 1] = mm[d]
                d += 1
                enter = True
                continue
            stage[d] = 1
        if stage[d] == 1:
            rem = nbrem[d]
            if rem != ZERO:
                lb = rem & (~rem + ONE)
                nbrem[d] = rem ^ lb
                kind[d] = 1
                item[d] = popcount(lb - ONE)
                free[d + 1] = fr & ~vbit & ~lb
                tt[d + 1] = tt[d]
                mm[d + 1] = mm[d] + 1
                d += 1
                enter = True
                continue
            stage[d] = 2
        if stage[d] == 2:
            stage[d] = 3
            kind[d] = 2
            item[d] = -1
            free[d + 1] = fr & ~vbit
            tt[d + 1] = tt[d]
            mm[d + 1] = mm[d]
            d += 1
            enter = True
            continue
        d -= 1

    if best_t < 0:
        tri = np.empty((0, 3), dtype=np.int64)
        mat = np.empty((0, 2), dtype=np.int64)
        sing = np.arange(n, dtype=np.int64)
        return tri, mat, sing, nodes, complete
    tri = np.empty((best_t, 3), dtype=np.int64)
    mat = np.empty((best_m, 2), dtype=np.int64)
    sing = np.empty(n - 3 * best_t - 2 * best_m, dtype=np.int64)
    a = 0
    b = 0
    c = 0
    for j in range(best_len):
        if best_kind[j] == 0:
            tri[a, :] = abc[best_item[j], :]
            a += 1
        elif best_kind[j] == 1:
            mat[b, 0] = best_v[j]
            mat[b, 1] = best_item[j]
            b += 1
        else:
            sing[c] = best_v[j]
            c += 1
    return tri, mat, sing, nodes, complete


@njit(cache=True)
def rainbow_search(tri_vmask, tri_colors, s, budget, num_colors):
    k = tri_vmask.shape[0]
    cand = np.empty((s + 1, k), dtype=np.int64)
    length = np.zeros(s + 1, dtype=np.int64)
    pos = np.zeros(s + 1, dtype=np.int64)
    chosen = np.empty(s, dtype=np.int64)
    stamp = np.zeros(num_colors + 1, dtype=np.int64)
    token = 0
    for j in range(k):
        cand[0, j] = j
    length[0] = k
    nodes = 0
    d = 0
    enter = True
    found = False
    while d >= 0:
        need = s - d
        if enter:
            enter = False
            nodes += 1
            if nodes > budget:
                return chosen[:0], nodes, False
            if need == 0:
                found = True
                break
            L = length[d]
            if L < need:
                d -= 1
                continue
            union_v = ZERO
            token += 1
            distinct = 0
            for q in range(L):
                j = cand[d, q]
                union_v |= tri_vmask[j]
                for r in range(3):
                    col = tri_colors[j, r]
                    if stamp[col] != token:
                        stamp[col] = token
                        distinct += 1
            if popcount(union_v) < 3 * need or distinct < 3 * need:
                d -= 1
                continue
            pos[d] = 0
        p = pos[d]
        L = length[d]
        if p < L and L - p >= need:
            i = cand[d, p]
            pos[d] = p + 1
            chosen[d] = i
            if need == 1:
                found = True
                break
            vi = tri_vmask[i]
            c0 = tri_colors[i, 0]
            c1 = tri_colors[i, 1]
            c2 = tri_colors[i, 2]
            cnt = 0
            for q in range(p + 1, L):
                j = cand[d, q]
                if tri_vmask[j] & vi:
                    continue
                clash = False
                for r in range(3):
                    col = tri_colors[j, r]
                    if col == c0 or col == c1 or col == c2:
                        clash = True
                        break
                if not clash:
                    cand[d + 1, cnt] = j
                    cnt += 1
            length[d + 1] = cnt
            d += 1
            enter = True
            continue
        d -= 1
    if found:
        return chosen.copy(), nodes, True
    return chosen[:0], nodes, True


@njit(cache=True)
def ar_search(n, tilings, tiling_last, k, budget):
    m = n * (n - 1) // 2
    rows = tilings.shape[0]
    width = tilings.shape[1]
    order = np.argsort(tiling_last, kind="mergesort")
    start = np.zeros(m + 1, dtype=np.int64)
    for r in range(rows):
        start[tiling_last[r] + 1] += 1
    for j in range(m):
        start[j + 1] += start[j]
    color = np.zeros(m, dtype=np.int64)
    used = np.zeros(m + 1, dtype=np.int64)
    nxt = np.zeros(m + 1, dtype=np.int64)
    stamp = np.zeros(m + 1, dtype=np.int64)
    token = 0
    nodes = 0
    j = 0
    enter = True
    while j >= 0:
        if enter:
            enter = False
            nodes += 1
            if nodes > budget:
                return color[:0], nodes, False
            if j == m:
                if used[j] >= k:
                    return color.copy(), nodes, True
                j -= 1
                continue
            if used[j] + (m - j) < k:
                j -= 1
                continue
            nxt[j] = used[j]
        advanced = False
        while nxt[j] >= 0:
            c = nxt[j]
            nxt[j] -= 1
            color[j] = c
            closed = False
            for q in range(start[j], start[j + 1]):
                r = order[q]
                token += 1
                distinct = True
                for e in range(width):
                    col = color[tilings[r, e]]
                    if stamp[col] == token:
                        distinct = False
                        break
                    stamp[col] = token
                if distinct:
                    closed = True
                    break
            if closed:
                continue
            used[j + 1] = used[j] if used[j] > c + 1 else c + 1
            j += 1
            enter = True
            advanced = True
            break
        if not advanced:
            j -= 1
    return color[:0], nodes, True
