"""Rainbow triangle tilings in coloured complete graphs and the small-n oracles."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .coloring import EdgeColoring, all_edges, edge_index
from .errors import DEFAULT_NODE_BUDGET, Indeterminate
from .graph import Graph, edge_count, vertex_set
from .tiling import find_tiling


@dataclass(frozen=True)
class RainbowTiling:
    triangles: tuple[tuple[int, int, int], ...]
    colors: tuple[int, ...]

    def check(self, c: EdgeColoring) -> bool:
        verts = [v for tri in self.triangles for v in tri]
        cols = [c.color(u, v) for a, b, d in self.triangles for u, v in ((a, b), (a, d), (b, d))]
        return len(set(verts)) == len(verts) and len(set(cols)) == len(cols)

    def to_json(self) -> dict:
        return {"triangles": [list(t) for t in self.triangles], "colors": list(self.colors)}


def rainbow_triangles(c: EdgeColoring):
    """Triangles of K_n with three distinct colours, in canonical order."""
    out = []
    col = c.color
    for a, b, d in itertools.combinations(range(c.n), 3):
        x, y, z = col(a, b), col(a, d), col(b, d)
        if x != y and x != z and y != z:
            out.append(((a, b, d), (x, y, z)))
    return out


def rainbow_search_stats(c: EdgeColoring, s: int, *, budget: int = DEFAULT_NODE_BUDGET,
                         backend: str | None = None):
    """``(RainbowTiling or None, nodes)``; raises Indeterminate on budget exhaustion."""
    if s < 1:
        raise ValueError("s must be at least 1")
    if 3 * s > c.n:
        return None, 0
    tris = rainbow_triangles(c)
    if not tris:
        return None, 0
    vm = [vertex_set(t) for t, _ in tris]
    cols = np.array([[x - 1 for x in cs] for _, cs in tris], dtype=np.int64)
    idx, nodes, complete = kernels.rainbow_search(c.n, vm, cols, s, budget, c.num_colors,
                                                  backend=backend)
    if not complete:
        raise Indeterminate(f"rainbow search exceeded {budget} nodes", nodes=nodes)
    if idx is None:
        return None, nodes
    chosen = [tris[i] for i in idx]
    return RainbowTiling(tuple(t for t, _ in chosen),
                         tuple(x for _, cs in chosen for x in cs)), nodes


def find_rainbow_tiling(c: EdgeColoring, s: int, *, budget: int = DEFAULT_NODE_BUDGET,
                        backend: str | None = None) -> RainbowTiling | None:
    """``s`` vertex-disjoint triangles using 3s distinct colours, or None.

    Returns None outright when ``3s > n``.
    """
    return rainbow_search_stats(c, s, budget=budget, backend=backend)[0]


def representative_graph(c: EdgeColoring) -> Graph:
    """One edge per colour class: the canonically smallest."""
    seen: set[int] = set()
    keep = []
    for e, col in zip(all_edges(c.n), c.colors):
        if col not in seen:
            seen.add(col)
            keep.append(e)
    return Graph.from_edges(c.n, keep)


# -- s-tilings of K_n -----------------------------------------------------------------


def complete_tilings(n: int, s: int) -> list[tuple[tuple[int, int, int], ...]]:
    """All sets of ``s`` vertex-disjoint triangles in K_n, triangles sorted."""
    tris = list(itertools.combinations(range(n), 3))
    out = []

    def rec(start, used, acc):
        if len(acc) == s:
            out.append(tuple(acc))
            return
        for k in range(start, len(tris)):
            m = vertex_set(tris[k])
            if not m & used:
                acc.append(tris[k])
                rec(k + 1, used | m, acc)
                acc.pop()

    rec(0, 0, [])
    return out


def _tiling_edge_rows(n: int, s: int) -> np.ndarray:
    rows = []
    for tiling in complete_tilings(n, s):
        rows.append(sorted(edge_index(n, u, v) for a, b, d in tiling
                           for u, v in ((a, b), (a, d), (b, d))))
    return np.array(rows, dtype=np.int64).reshape(-1, 3 * s)


# -- Turan oracle ----------------------------------------------------------------------


@dataclass(frozen=True)
class ExResult:
    n: int
    s: int
    value: int
    witness: Graph
    method: str
    nodes: int

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s, "value": self.value, "method": self.method,
                "nodes": self.nodes, "witness_edges": [list(e) for e in self.witness.edges()]}


EXHAUSTIVE_MAX_N = 7


def _graph_from_mask(n: int, mask: int) -> Graph:
    return Graph.from_edges(n, [e for k, e in enumerate(all_edges(n)) if mask >> k & 1])


def _ex_exhaustive(n: int, s: int) -> ExResult:
    m = n * (n - 1) // 2
    masks = np.arange(1 << m, dtype=np.uint32)
    bad = np.zeros(len(masks), dtype=bool)
    for row in _tiling_edge_rows(n, s):
        t = np.uint32(sum(1 << int(e) for e in row))
        bad |= (masks & t) == t
    sizes = np.bitwise_count(masks).astype(np.int64)
    sizes[bad] = -1
    best = int(sizes.max())
    first = int(np.flatnonzero(sizes == best)[0])
    return ExResult(n, s, best, _graph_from_mask(n, first), "exhaustive", len(masks))


def _tiling_edges(n: int, tiling) -> list[int]:
    return sorted(edge_index(n, u, v) for a, b, d in tiling for u, v in ((a, b), (a, d), (b, d)))


def _seed_incumbent(n: int, s: int):
    """Densest extremal-family graph (t = s-1) that really has no s-tiling."""
    from .constructions import ConstructionSpec, build_construction

    best = (-1, None)
    for fam in ("G1", "G2", "G3", "G4"):
        spec = ConstructionSpec(fam, n, s - 1)
        if spec.violations():
            continue
        g = build_construction(spec).graph
        if edge_count(g) > best[0] and find_tiling(g, s) is None:
            best = (edge_count(g), g)
    return best


def _ex_branch_and_bound(n: int, s: int, budget: int) -> ExResult:
    """Minimum hitting set of the s-tilings of K_n, branching on a found tiling.

    Branch j deletes the j-th free edge of the tiling and keeps the earlier
    ones, so the branches partition the search space.
    """
    edges = all_edges(n)
    full = Graph.complete(n)
    total = len(edges)
    best = list(_seed_incumbent(n, s))
    nodes = [0]

    def graph_without(mask: int) -> Graph:
        return full.without_edges(e for k, e in enumerate(edges) if mask >> k & 1)

    def rec(removed: int, kept: int):
        nodes[0] += 1
        if nodes[0] > budget:
            raise Indeterminate(f"Turan branch-and-bound exceeded {budget} nodes",
                                nodes=nodes[0], bounds=(best[0], total))
        size = total - removed.bit_count()
        if size <= best[0]:
            return
        g = graph_without(removed)
        tiling = find_tiling(g, s)
        if tiling is None:
            best[0], best[1] = size, g
            return
        free = [k for k in _tiling_edges(n, tiling) if not kept >> k & 1]
        if not free:
            return
        # edge-disjoint tilings each need their own deleted edge
        need, used = 1, removed | sum(1 << k for k in free)
        while size - need > best[0]:
            other = find_tiling(graph_without(used), s)
            if other is None:
                break
            more = [k for k in _tiling_edges(n, other) if not kept >> k & 1]
            if not more:
                return
            used |= sum(1 << k for k in more)
            need += 1
        if size - need <= best[0]:
            return
        for k in free:
            rec(removed | 1 << k, kept)
            kept |= 1 << k

    rec(0, 0)
    return ExResult(n, s, best[0], best[1], "branch-and-bound", nodes[0])


def ex_oracle(n: int, s: int, *, budget: int = DEFAULT_NODE_BUDGET, method: str | None = None) -> ExResult:
    """Largest edge count of an n-vertex graph without ``s`` disjoint triangles.

    Full enumeration of all graphs for ``n <= 7``, branch-and-bound on the
    edges of a found s-tiling above that (or when ``method`` says so).
    """
    if n < 1 or s < 1:
        raise ValueError("need n >= 1 and s >= 1")
    if 3 * s > n:
        g = Graph.complete(n)
        return ExResult(n, s, edge_count(g), g, "trivial", 0)
    method = method or ("exhaustive" if n <= EXHAUSTIVE_MAX_N else "branch-and-bound")
    if method == "exhaustive":
        if n > EXHAUSTIVE_MAX_N:
            raise ValueError(f"full enumeration supports n <= {EXHAUSTIVE_MAX_N}")
        return _ex_exhaustive(n, s)
    if method == "branch-and-bound":
        return _ex_branch_and_bound(n, s, budget)
    raise ValueError(f"unknown method {method!r}")


# -- anti-Ramsey oracle -----------------------------------------------------------------


@dataclass(frozen=True)
class ArResult:
    n: int
    s: int
    value: int
    witness: EdgeColoring
    sandwich: tuple
    sandwich_ok: bool
    witness_rainbow_free: bool
    nodes: int

    def to_json(self) -> dict:
        return {
            "n": self.n, "s": self.s, "value": self.value,
            "sandwich": list(self.sandwich), "sandwich_ok": self.sandwich_ok,
            "witness_rainbow_free": self.witness_rainbow_free, "nodes": self.nodes,
            "witness": self.witness.to_json(),
        }


AR_MAX_N = 6


def _load_checkpoint(path, n, s):
    if path is None or not Path(path).exists():
        return None
    data = json.loads(Path(path).read_text())
    if data.get("n") != n or data.get("s") != s:
        return None
    return data


def _save_checkpoint(path, data):
    if path is not None:
        Path(path).write_text(json.dumps(data, sort_keys=True) + "\n")


def ar_oracle(n: int, s: int, *, budget: int = DEFAULT_NODE_BUDGET, checkpoint: str | None = None,
              allow_large: bool = False, backend: str | None = None) -> ArResult:
    """Smallest N such that every N-colouring of K_n has a rainbow sK3.

    Target colour counts k are tried from C(n,2) downwards; each search walks
    restricted-growth strings over the canonical edge order and cuts a prefix
    as soon as a fully coloured s-tiling is rainbow.  The first k admitting a
    colouring gives ar = k + 1.  The checkpoint records the smallest k already
    refuted so an interrupted run resumes there.
    """
    if n > AR_MAX_N and not allow_large:
        raise ValueError(f"ar_oracle is capped at n <= {AR_MAX_N}; pass allow_large=True")
    if s < 1 or 3 * s > n:
        raise ValueError("need 1 <= s <= n/3")
    m = n * (n - 1) // 2
    rows = _tiling_edge_rows(n, s)
    last = rows.max(axis=1)
    state = _load_checkpoint(checkpoint, n, s) or {"n": n, "s": s, "refuted_down_to": m + 1, "nodes": 0}
    total_nodes = int(state["nodes"])
    remaining = budget
    witness = None
    k = int(state["refuted_down_to"]) - 1
    while k >= 1:
        colour, nodes, complete = kernels.ar_search(n, rows, last, k, remaining, backend=backend)
        total_nodes += nodes
        remaining -= nodes
        if not complete:
            raise Indeterminate(f"anti-Ramsey search exceeded {budget} nodes at k={k}",
                                nodes=total_nodes, bounds=_sandwich(n, s))
        if colour is not None:
            witness = EdgeColoring.from_labels(n, [int(x) for x in colour])
            break
        state.update(refuted_down_to=k, nodes=total_nodes)
        _save_checkpoint(checkpoint, state)
        k -= 1
    value = witness.num_colors + 1
    sandwich = _sandwich(n, s)
    lo, hi = sandwich
    ok = (lo is None or lo <= value) and value <= hi
    free = find_rainbow_tiling(witness, s) is None
    return ArResult(n, s, value, witness, sandwich, ok, free, total_nodes)


def _sandwich(n: int, s: int) -> tuple:
    hi = ex_oracle(n, s).value + 1
    lo = ex_oracle(n, s - 1).value + 2 if s >= 2 else None
    return (lo, hi)
