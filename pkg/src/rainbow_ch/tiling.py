"""Maximum triangle tilings, maximal tiling triples and the ideal partition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import kernels
from .errors import DEFAULT_NODE_BUDGET, Indeterminate
from .formulas import PartitionStats
from .graph import Graph, edges_between, edges_within, members, vertex_set

Triangle = tuple[int, int, int]
Edge = tuple[int, int]

T2_RULES = ("triangles", "singletons")


@dataclass(frozen=True)
class TilingTriple:
    """Vertex partition into triangles, matching edges and singletons."""

    triangles: tuple[Triangle, ...]
    matching: tuple[Edge, ...]
    singletons: tuple[int, ...]

    @classmethod
    def build(cls, triangles, matching, singletons) -> TilingTriple:
        return cls(
            tuple(sorted(tuple(sorted(t)) for t in triangles)),
            tuple(sorted(tuple(sorted(e)) for e in matching)),
            tuple(sorted(singletons)),
        )

    @property
    def m(self) -> int:
        return len(self.matching)

    @property
    def i(self) -> int:
        return len(self.singletons)

    def validate(self, g: Graph) -> None:
        seen: list[int] = []
        for a, b, c in self.triangles:
            if not (g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)):
                raise ValueError(f"{(a, b, c)} is not a triangle")
            seen.extend((a, b, c))
        for u, v in self.matching:
            if not g.has_edge(u, v):
                raise ValueError(f"{(u, v)} is not an edge")
            seen.extend((u, v))
        seen.extend(self.singletons)
        if sorted(seen) != list(range(g.n)):
            raise ValueError("tiling triple does not partition the vertex set")

    def to_json(self) -> dict:
        return {
            "triangles": [list(t) for t in self.triangles],
            "matching": [list(e) for e in self.matching],
            "singletons": list(self.singletons),
        }

    @classmethod
    def from_json(cls, data: dict) -> TilingTriple:
        return cls.build(data["triangles"], data["matching"], data["singletons"])


def max_tiling_number(g: Graph, *, budget: int = DEFAULT_NODE_BUDGET, backend=None) -> int:
    size, _, nodes, complete = kernels.max_tiling(g.adj, budget, backend=backend)
    if not complete:
        raise Indeterminate(f"tiling search exceeded {budget} nodes", nodes=nodes,
                            bounds=(size, g.n // 3))
    return size


def find_tiling(g: Graph, s: int, *, budget: int = DEFAULT_NODE_BUDGET, backend=None):
    """``s`` vertex-disjoint triangles of ``g`` or None (first-witness search)."""
    size, tris, nodes, complete = kernels.max_tiling(g.adj, budget, target=s, backend=backend)
    if size >= s:
        return tris[:s]
    if not complete:
        raise Indeterminate(f"tiling search exceeded {budget} nodes", nodes=nodes)
    return None


def maximal_tiling_triple(g: Graph, *, budget: int = DEFAULT_NODE_BUDGET,
                          backend=None) -> TilingTriple:
    tris, mat, sing, nodes, complete = kernels.maximal_triple(g.adj, budget, backend=backend)
    if not complete:
        raise Indeterminate(f"tiling-triple search exceeded {budget} nodes", nodes=nodes)
    return TilingTriple.build(tris, mat, sing)


# -- sees relations ----------------------------------------------------------


@dataclass(frozen=True)
class SeesWitness:
    kind: str  # "edge" or "vertex"
    seer: tuple[int, ...]
    seen_triangle: Triangle
    seen_vertices: tuple[int, ...]


def _check_disjoint(seer, tri):
    if set(seer) & set(tri):
        raise ValueError(f"{seer} and {tri} share a vertex")


def edge_sees(g: Graph, e: Edge, tri: Triangle) -> SeesWitness | None:
    """Triangle vertices adjacent to both ends of ``e``."""
    _check_disjoint(e, tri)
    u, v = e
    seen = tuple(x for x in tri if g.has_edge(u, x) and g.has_edge(v, x))
    return SeesWitness("edge", tuple(e), tuple(tri), seen) if seen else None


def vertex_sees(g: Graph, w: int, tri: Triangle) -> SeesWitness | None:
    """Vertex ``w`` sees a triangle when adjacent to at least two of its vertices."""
    _check_disjoint((w,), tri)
    seen = tuple(x for x in tri if g.has_edge(w, x))
    return SeesWitness("vertex", (w,), tuple(tri), seen) if len(seen) >= 2 else None


def _seen_mask(g: Graph, e: Edge, tri_mask: int) -> int:
    return g.adj[e[0]] & g.adj[e[1]] & tri_mask


def triangle_sees(g: Graph, other: Triangle, tri: Triangle) -> bool:
    """Some edge of ``other`` edge-sees ``tri``."""
    tm = vertex_set(tri)
    a, b, c = other
    return any(_seen_mask(g, e, tm) for e in ((a, b), (a, c), (b, c)))


# -- ideal partition -----------------------------------------------------------


@dataclass(frozen=True)
class IdealPartition:
    t1: tuple[Triangle, ...]
    t2: tuple[Triangle, ...]
    t3: tuple[Triangle, ...]
    t4: tuple[Triangle, ...]
    critical: dict = field(hash=False)
    v_prime: int
    v_dprime: int
    shared_seen_vertex: bool  # every T1 triangle's M-edges see one common vertex
    t2_rule: str = "singletons"
    peel_order: str = "canonical"

    @property
    def classes(self) -> tuple[tuple[Triangle, ...], ...]:
        return (self.t1, self.t2, self.t3, self.t4)

    def to_json(self) -> dict:
        return {
            "t1": [list(t) for t in self.t1],
            "t2": [list(t) for t in self.t2],
            "t3": [list(t) for t in self.t3],
            "t4": [list(t) for t in self.t4],
            "critical": [[list(t), v] for t, v in sorted(self.critical.items())],
            "v_prime": members(self.v_prime),
            "v_dprime": members(self.v_dprime),
            "shared_seen_vertex": self.shared_seen_vertex,
            "t2_rule": self.t2_rule,
            "peel_order": self.peel_order,
        }


def peel(g: Graph, pool: list[Triangle], rng: random.Random | None = None):
    """Split ``pool`` into (sparse part S, dense remainder D).

    A triangle sending at most ``8(|D|-1)`` edges to the rest of ``D`` moves
    to ``S``; the test is recomputed after every move.  Candidates are tried in
    canonical order, or shuffled each pass when ``rng`` is given.
    """
    d = list(pool)
    s: list[Triangle] = []
    masks = {tri: vertex_set(tri) for tri in d}
    while d:
        union = 0
        for tri in d:
            union |= masks[tri]
        order = list(d) if rng is None else rng.sample(d, len(d))
        limit = 8 * (len(d) - 1)
        for tri in order:
            if edges_between(g, masks[tri], union & ~masks[tri]) <= limit:
                d.remove(tri)
                s.append(tri)
                break
        else:
            break
    return s, d


def ideal_partition(g: Graph, triple: TilingTriple, *, t2_rule: str = "singletons",
                    rng: random.Random | None = None) -> IdealPartition:
    """Split the triangles of ``triple`` into the four ideal-partition classes.

    ``t2_rule`` chooses what "seen by at least two members" counts toward T2:
    other triangles (``"triangles"``) or singleton vertices (``"singletons"``).
    """
    if t2_rule not in T2_RULES:
        raise ValueError(f"t2_rule must be one of {T2_RULES}")
    triple.validate(g)
    tris = list(triple.triangles)
    t1, rest = [], []
    critical: dict[Triangle, int] = {}
    shared = True
    for tri in tris:
        tm = vertex_set(tri)
        seen_masks = [m for m in (_seen_mask(g, e, tm) for e in triple.matching) if m]
        if len(seen_masks) >= 2:
            t1.append(tri)
            counts = {x: sum(m >> x & 1 for m in seen_masks) for x in tri}
            critical[tri] = max(tri, key=lambda x: (counts[x], -x))
            common = tm
            for m in seen_masks:
                common &= m
            if not common or any(m & ~common for m in seen_masks):
                shared = False
        else:
            rest.append((tri, len(seen_masks)))

    t2, pool = [], []
    for tri, m_seers in rest:
        tm = vertex_set(tri)
        i_seers = sum((g.adj[w] & tm).bit_count() >= 2 for w in triple.singletons)
        if t2_rule == "triangles":
            many = sum(triangle_sees(g, other, tri) for other in tris if other != tri) >= 2
        else:
            many = i_seers >= 2
        if many or (m_seers == 1 and i_seers >= 1):
            t2.append(tri)
        else:
            pool.append(tri)

    t3, t4 = peel(g, pool, rng)
    v_dprime = vertex_set(critical.values())
    v_prime = vertex_set(v for tri in t1 for v in tri) & ~v_dprime
    return IdealPartition(
        tuple(t1), tuple(t2), tuple(t3), tuple(t4), critical, v_prime, v_dprime, shared,
        t2_rule, "canonical" if rng is None else "random",
    )


def partition_stats(p: IdealPartition, triple: TilingTriple) -> PartitionStats:
    return PartitionStats(len(p.t1), len(p.t2), len(p.t3), len(p.t4), triple.m, triple.i)


PROFILE_LABELS = ("T1", "T2", "T3", "T4", "M", "I")


def class_masks(p: IdealPartition, triple: TilingTriple) -> dict[str, int]:
    return {
        "T1": vertex_set(v for tri in p.t1 for v in tri),
        "T2": vertex_set(v for tri in p.t2 for v in tri),
        "T3": vertex_set(v for tri in p.t3 for v in tri),
        "T4": vertex_set(v for tri in p.t4 for v in tri),
        "M": vertex_set(v for e in triple.matching for v in e),
        "I": vertex_set(triple.singletons),
    }


@dataclass(frozen=True)
class EdgeProfile:
    within: dict
    between: dict
    h_prime: int
    v_dprime: int
    v_dprime_v_prime: int
    v_dprime_m: int

    def e(self, a: str, b: str | None = None) -> int:
        if b is None or a == b:
            return self.within[a]
        return self.between[(a, b)] if (a, b) in self.between else self.between[(b, a)]

    def total(self) -> int:
        return sum(self.within.values()) + sum(self.between.values())

    def to_csv(self) -> str:
        rows = ["," + ",".join(PROFILE_LABELS)]
        for a in PROFILE_LABELS:
            rows.append(a + "," + ",".join(str(self.e(a, b)) for b in PROFILE_LABELS))
        rows.append("")
        rows.append(f"H_prime,{self.h_prime}")
        rows.append(f"V_dprime,{self.v_dprime}")
        rows.append(f"V_dprime-V_prime,{self.v_dprime_v_prime}")
        rows.append(f"V_dprime-M,{self.v_dprime_m}")
        return "\n".join(rows) + "\n"


def part_edge_profile(g: Graph, triple: TilingTriple, p: IdealPartition) -> EdgeProfile:
    masks = class_masks(p, triple)
    within = {a: edges_within(g, masks[a]) for a in PROFILE_LABELS}
    between = {}
    for k, a in enumerate(PROFILE_LABELS):
        for b in PROFILE_LABELS[k + 1:]:
            between[(a, b)] = edges_between(g, masks[a], masks[b])
    return EdgeProfile(
        within,
        between,
        edges_within(g, p.v_prime | masks["M"]),
        edges_within(g, p.v_dprime),
        edges_between(g, p.v_dprime, p.v_prime),
        edges_between(g, p.v_dprime, masks["M"]),
    )
