"""Pure-Python search kernels on int bitsets (no vertex-count limit).

Each kernel mirrors a compiled counterpart in ``_nb``; both must return
identical results on identical inputs.
"""

from __future__ import annotations

import numpy as np


class _Exhausted(Exception):
    pass


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _live(adj, free: int) -> int:
    """Vertices of ``free`` lying on a triangle inside ``free``."""
    live = 0
    rest = free
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if live >> v & 1:
            continue
        nb = adj[v] & free
        cand = nb
        while cand:
            lb = cand & -cand
            u = lb.bit_length() - 1
            cand ^= lb
            common = adj[u] & nb
            if common:
                w = _lowest(common)
                live |= low | lb | (1 << w)
                break
    return live


def _nonisolated(adj, free: int) -> int:
    count = 0
    rest = free
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if adj[v] & free:
            count += 1
    return count


def _triangles_by_lowest(adj, n):
    by_low = [[] for _ in range(n)]
    for a in range(n):
        hi = adj[a] >> (a + 1) << (a + 1)
        rest = hi
        while rest:
            lb = rest & -rest
            b = lb.bit_length() - 1
            rest ^= lb
            common = hi & adj[b] >> (b + 1) << (b + 1)
            while common:
                lc = common & -common
                c = lc.bit_length() - 1
                common ^= lc
                by_low[a].append((a, b, c, (1 << a) | lb | lc))
    return by_low


def max_tiling(adj, budget: int, target: int = -1):
    """Maximum set of vertex-disjoint triangles.

    Returns ``(size, triangles, nodes, complete)``; stops early once ``target``
    triangles are found when ``target >= 0``.
    """
    n = len(adj)
    by_low = _triangles_by_lowest(adj, n)
    best = [0, []]
    nodes = [0]
    path = []
    ceiling = _live(adj, (1 << n) - 1).bit_count() // 3
    goal = ceiling if target < 0 else min(target, ceiling)

    def dfs(free):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        if len(path) > best[0]:
            best[0] = len(path)
            best[1] = list(path)
            if best[0] >= goal:
                return True
        live = _live(adj, free)
        if len(path) + live.bit_count() // 3 <= best[0]:
            return False
        v = _lowest(live)
        for a, b, c, m in by_low[v]:
            if m & free == m:
                path.append((a, b, c))
                done = dfs(free & ~m)
                path.pop()
                if done:
                    return True
        return dfs(free & ~(1 << v))

    complete = True
    try:
        if goal > 0:
            dfs((1 << n) - 1)
    except _Exhausted:
        complete = False
    return best[0], best[1], nodes[0], complete


def maximal_triple(adj, budget: int):
    """Lexicographically maximal (#triangles, #matching edges) vertex partition.

    Returns ``(triangles, matching, singletons, nodes, complete)``.
    """
    n = len(adj)
    by_low = _triangles_by_lowest(adj, n)
    full = (1 << n) - 1
    root_t = _live(adj, full).bit_count() // 3
    best = {"t": -1, "m": -1, "sol": None}
    nodes = [0]
    tris, mats, singles = [], [], []

    def root_m_cap(t):
        return (_nonisolated(adj, full) - 3 * t) // 2

    def dfs(free, t, m):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        if not free:
            if (t, m) > (best["t"], best["m"]):
                best.update(t=t, m=m, sol=(list(tris), list(mats), list(singles)))
                if t == root_t and m == root_m_cap(t):
                    return True
            return False
        live = _live(adj, free)
        ub_t = t + live.bit_count() // 3
        if ub_t < best["t"]:
            return False
        if ub_t == best["t"]:
            k = best["t"] - t
            if m + (_nonisolated(adj, free) - 3 * k) // 2 <= best["m"]:
                return False
        v = _lowest(free)
        rest_free = free & ~(1 << v)
        for a, b, c, mask in by_low[v]:
            if mask & free == mask:
                tris.append((a, b, c))
                done = dfs(free & ~mask, t + 1, m)
                tris.pop()
                if done:
                    return True
        nb = adj[v] & free
        while nb:
            lb = nb & -nb
            u = lb.bit_length() - 1
            nb ^= lb
            mats.append((v, u))
            done = dfs(rest_free & ~lb, t, m + 1)
            mats.pop()
            if done:
                return True
        singles.append(v)
        done = dfs(rest_free, t, m)
        singles.pop()
        return done

    complete = True
    try:
        dfs(full, 0, 0)
    except _Exhausted:
        complete = False
    if best["sol"] is None:
        return [], [], list(range(n)), nodes[0], complete
    triangles, matching, single = best["sol"]
    return triangles, matching, single, nodes[0], complete


def rainbow_search(tri_vmask, tri_colors, s: int, budget: int):
    """Find ``s`` vertex-disjoint triangles whose 3s edge colours are distinct.

    ``tri_vmask`` holds one vertex bitmask per (already rainbow) triangle and
    ``tri_colors`` a ``(k, 3)`` array of colour ids.  Returns
    ``(indices or None, nodes, complete)``.
    """
    k = len(tri_vmask)
    vm = [int(x) for x in tri_vmask]
    cm = [(1 << int(a)) | (1 << int(b)) | (1 << int(c)) for a, b, c in tri_colors]
    nodes = [0]
    chosen = []

    def dfs(cands, need):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        if need == 0:
            return True
        if len(cands) < need:
            return False
        union_v = 0
        union_c = 0
        for j in cands:
            union_v |= vm[j]
            union_c |= cm[j]
        if union_v.bit_count() < 3 * need or union_c.bit_count() < 3 * need:
            return False
        for pos, i in enumerate(cands):
            if len(cands) - pos < need:
                return False
            vi, ci = vm[i], cm[i]
            if need == 1:
                chosen.append(i)
                return True
            nxt = [j for j in cands[pos + 1:] if not (vm[j] & vi or cm[j] & ci)]
            chosen.append(i)
            if dfs(nxt, need - 1):
                return True
            chosen.pop()
        return False

    try:
        found = dfs(list(range(k)), s)
    except _Exhausted:
        return None, nodes[0], False
    return (list(chosen) if found else None), nodes[0], True


def ar_search(n: int, tilings, tiling_last, k: int, budget: int):
    """Search edge colourings of K_n, as restricted-growth strings over the
    canonical edge order, that use at least ``k`` colours and have no rainbow
    member of ``tilings``.

    ``tilings`` is a ``(T, 3s)`` array of edge indices and ``tiling_last`` the
    largest edge index of each row.  Returns ``(colouring or None, nodes, complete)``.
    """
    m = n * (n - 1) // 2
    by_last = [[] for _ in range(m)]
    for row, last in zip(tilings, tiling_last):
        by_last[int(last)].append([int(e) for e in row])
    color = [0] * m
    nodes = [0]

    def rainbow_closed(j):
        for row in by_last[j]:
            seen = set()
            for e in row:
                c = color[e]
                if c in seen:
                    break
                seen.add(c)
            else:
                return True
        return False

    def dfs(j, used):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Exhausted
        if j == m:
            return used >= k
        if used + (m - j) < k:
            return False
        for c in range(used, -1, -1):
            color[j] = c
            if rainbow_closed(j):
                continue
            if dfs(j + 1, max(used, c + 1)):
                return True
        return False

    try:
        found = dfs(0, 0)
    except _Exhausted:
        return None, nodes[0], False
    return (np.array(color, dtype=np.int64) if found else None), nodes[0], True
