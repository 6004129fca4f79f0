"""Builders for the extremal graphs E1..E5, G1..G4 and their lower-bound colourings."""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import EdgeColoring, all_edges, graph_coloring
from .errors import DEFAULT_NODE_BUDGET, Indeterminate, Verdict
from .formulas import CLOSED_FORMS, binom2, ceil_half, construction_violations, gamma3
from .graph import Graph, members

FAMILIES = ("E1", "E2", "E3", "E4", "E5", "G1", "G2", "G3", "G4")
E_FAMILIES = FAMILIES[:5]


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    n: int
    t: int
    y1: int | None = None  # G4 only: |Y1| (= |Y3|); balanced by default
    rival: bool = False  # E3 only: X one smaller, for comparing with the rival conjecture

    def violations(self) -> list[str]:
        out = construction_violations(self.family, self.n, self.t)
        if self.rival and self.family != "E3":
            out.append("rival flag applies to E3 only")
        if self.rival and self.family == "E3":
            out = construction_violations("G3", self.n, self.t)
        if self.y1 is not None:
            if self.family != "G4":
                out.append("y1 applies to G4 only")
            elif not 0 <= self.y1 <= self.n - 3 * self.t - 2:
                out.append(f"y1={self.y1} outside [0, n-3t-2]")
        return out

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ValueError(f"invalid {self.family}({self.n},{self.t}): " + "; ".join(bad))

    def closed_form(self) -> int:
        if self.rival:
            return gamma3(self.n, self.t)
        return CLOSED_FORMS[self.family](self.n, self.t)


def part_sizes(spec: ConstructionSpec) -> dict[str, int]:
    n, t = spec.n, spec.t
    fam = spec.family
    if fam in ("E1", "G1"):
        return {"X": t, "Y1": (n - t) // 2, "Y2": ceil_half(n - t)}
    if fam in ("E2", "G2"):
        return {"X": 2 * t + 1, "Y1": n // 2, "Y2": ceil_half(n) - 2 * t - 1}
    if fam == "E3":
        x = 2 * t + 1 if spec.rival else 2 * t + 2
        return {"X": x, "Y": n - x}
    if fam == "E4":
        return {"X": 6 * t - n + 6, "Y1": n - 3 * t - 3, "Y2": n - 3 * t - 3}
    if fam == "E5":
        return {"X": 3 * t + 5, "Y": n - 3 * t - 5}
    if fam == "G3":
        return {"X": 2 * t + 1, "Y1": n - 2 * t - 1}
    if fam == "G4":
        k = n - 3 * t - 2
        y1 = ceil_half(k) if spec.y1 is None else spec.y1
        return {"X": 6 * t - n + 4, "Y1": y1, "Y2": k - y1, "Y3": y1, "Y4": k - y1}
    raise ValueError(f"unknown family {fam!r}")


# complete joins between parts; (A, A) means a clique on A
RULES = {
    "E1": [("X", "X"), ("X", "Y1"), ("X", "Y2"), ("Y1", "Y2")],
    "E2": [("X", "X"), ("X", "Y1"), ("Y1", "Y2")],
    "E3": [("X", "X"), ("X", "Y")],
    "E4": [("X", "X"), ("X", "Y1"), ("Y1", "Y2")],
    "E5": [("X", "X")],
    "G3": [("X", "X"), ("X", "Y1")],
    "G4": [("X", "X"), ("X", "Y1"), ("X", "Y2"),
           ("Y1", "Y3"), ("Y1", "Y4"), ("Y2", "Y3"), ("Y2", "Y4")],
}
RULES["G1"], RULES["G2"] = RULES["E1"], RULES["E2"]


@dataclass(frozen=True)
class PartedGraph:
    spec: ConstructionSpec
    graph: Graph
    parts: dict = field(hash=False)

    def to_json(self) -> dict:
        return {
            "family": self.spec.family,
            "n": self.spec.n,
            "t": self.spec.t,
            "parts": {k: members(v) for k, v in self.parts.items()},
            "edges": [list(e) for e in self.graph.edges()],
        }


def _layout(sizes: dict[str, int]) -> dict[str, int]:
    parts, start = {}, 0
    for name, size in sizes.items():
        parts[name] = ((1 << size) - 1) << start
        start += size
    return parts


def _path_edges(parts: dict[str, int]) -> list[tuple[int, int]]:
    ys = members(parts["Y"])
    return list(zip(ys, ys[1:]))


def build_construction(spec: ConstructionSpec) -> PartedGraph:
    """Lay parts out on consecutive vertices and join them part by part."""
    spec.validate()
    parts = _layout(part_sizes(spec))
    joined = dict.fromkeys(parts, 0)
    for a, b in RULES[spec.family]:
        joined[a] |= parts[b]
        joined[b] |= parts[a]
    rows = [0] * spec.n
    start = 0
    for name, size in part_sizes(spec).items():
        nb = joined[name]
        rows[start:start + size] = [nb & ~(1 << v) for v in range(start, start + size)]
        start += size
    if spec.family == "E5":
        for u, v in _path_edges(parts):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return PartedGraph(spec, Graph(spec.n, tuple(rows)), parts)


def regenerate(pg: PartedGraph) -> Graph:
    """Rebuild the edge set pair by pair from the parts map (independent of the builder)."""
    label = {}
    for name, mask in pg.parts.items():
        for v in members(mask):
            if v in label:
                raise ValueError(f"vertex {v} in two parts")
            label[v] = name
    if sorted(label) != list(range(pg.spec.n)):
        raise ValueError("parts do not cover the vertex set")
    rules = {frozenset(r) for r in RULES[pg.spec.family]}
    path = set(_path_edges(pg.parts)) if pg.spec.family == "E5" else set()
    edges = [
        (u, v) for u, v in all_edges(pg.spec.n)
        if frozenset((label[u], label[v])) in rules or (u, v) in path
    ]
    return Graph.from_edges(pg.spec.n, edges)


def max_tiling_of_construction(spec: ConstructionSpec, *, budget: int = DEFAULT_NODE_BUDGET) -> int:
    from .tiling import max_tiling_number

    return max_tiling_number(build_construction(spec).graph, budget=budget)


# -- lower-bound colourings ---------------------------------------------------------


def _e5_coloring(n: int, t: int) -> EdgeColoring:
    k = 3 * t + 5
    base = binom2(k)
    clique = {e: c + 1 for c, e in enumerate(all_edges(k))}

    def colour(u, v):
        if v < k:
            return clique[(u, v)]
        # outside vertex v_i sits at position k + i - 1
        i = v - k + 1
        return base + (i if u < k else min(u - k + 1, i))

    return EdgeColoring(n, tuple(colour(u, v) for u, v in all_edges(n)))


def build_lower_bound_coloring(spec: ConstructionSpec) -> EdgeColoring:
    """Colouring of K_n with no rainbow (t+2)K3 and e(n,t)+1 colours.

    E1..E4: the construction is rainbow and every other pair shares one colour.
    E5: rainbow clique on 3t+5 vertices; the i-th outside vertex uses colour
    C(3t+5,2)+i towards the clique and C(3t+5,2)+min(i,j) towards v_j.
    """
    if spec.family not in E_FAMILIES:
        raise ValueError(f"lower-bound colourings exist for E1..E5, not {spec.family}")
    if spec.family == "E5":
        # the colouring only needs the clique, so n = 3t+5 is allowed here
        if spec.n < 3 * spec.t + 5 or spec.t < 0:
            raise ValueError(f"invalid E5 colouring: need n >= 3t+5 (n={spec.n}, t={spec.t})")
        return _e5_coloring(spec.n, spec.t)
    return graph_coloring(build_construction(spec).graph)


@dataclass(frozen=True)
class LowerBoundVerdict:
    verdict: Verdict
    num_colors: int
    s: int
    witness: object = None
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "num_colors": self.num_colors,
            "s": self.s,
            "witness": None if self.witness is None else self.witness.to_json(),
            "nodes": self.nodes,
        }


def verify_lower_bound_coloring(spec: ConstructionSpec, *, budget: int = DEFAULT_NODE_BUDGET,
                                backend: str | None = None) -> LowerBoundVerdict:
    """HOLDS iff an exhaustive search finds no rainbow (t+2)K3 in the colouring."""
    from .rainbow import rainbow_search_stats

    c = build_lower_bound_coloring(spec)
    s = spec.t + 2
    try:
        found, nodes = rainbow_search_stats(c, s, budget=budget, backend=backend)
    except Indeterminate as exc:
        return LowerBoundVerdict(Verdict.INDETERMINATE, c.num_colors, s, None, exc.nodes)
    if found is None:
        return LowerBoundVerdict(Verdict.HOLDS, c.num_colors, s, None, nodes)
    return LowerBoundVerdict(Verdict.VIOLATED, c.num_colors, s, found, nodes)


# -- built maxima ----------------------------------------------------------------------


def xi_from_constructions(n: int, t: int) -> tuple[int, str]:
    """Largest edge count over the valid E-constructions, counted on built graphs.

    Returns ``(edges, family)``; raises ValueError when no family is valid.
    """
    from .graph import edge_count

    best = None
    for fam in E_FAMILIES:
        spec = ConstructionSpec(fam, n, t)
        if spec.violations():
            continue
        m = edge_count(build_construction(spec).graph)
        if best is None or m > best[0]:
            best = (m, fam)
    if best is None:
        raise ValueError(f"no valid construction at n={n}, t={t}")
    return best


def piecewise_agreement(n_range=(60, 200), distance: int = 2) -> dict:
    """Compare the piecewise formula with built maxima over a grid of n.

    Points at distance >= ``distance`` from every interval boundary are
    checked; the rest are listed as boundary points, mismatches only.
    """
    from .formulas import distance_to_boundaries_at_least, xi_piecewise

    interior_bad, boundary_bad, checked = [], {}, 0
    for n in range(n_range[0], n_range[1] + 1):
        for t in range(n // 3 + 1):
            try:
                built, fam = xi_from_constructions(n, t)
            except ValueError:
                built, fam = None, None
            try:
                formula = xi_piecewise(n, t).value
            except ValueError:
                formula = None
            if distance_to_boundaries_at_least(n, t, distance):
                checked += 1
                if built != formula:
                    interior_bad.append({"n": n, "t": t, "formula": formula, "built": built})
            elif built != formula:
                boundary_bad.setdefault(n, []).append(
                    {"t": t, "formula": formula, "built": built, "family": fam})
    return {"checked": checked, "interior_mismatches": interior_bad,
            "boundary_mismatches": boundary_bad,
            "max_boundary_per_n": max((len(v) for v in boundary_bad.values()), default=0)}
