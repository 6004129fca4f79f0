"""Simple undirected graphs stored as per-vertex neighbour bitsets.

Vertex sets are plain Python ints used as bitmasks: bit ``v`` is set when
vertex ``v`` belongs to the set.  All counting primitives used elsewhere in
the package live here.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

MAX_VERTICES = 256

VertexSet = int


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Vertices of ``mask`` in increasing order."""
    if mask < 0:
        raise ValueError("vertex sets are non-negative")
    # the reversed binary string reads bit 0 first; the "b0" tail never matches
    return [i for i, ch in enumerate(reversed(bin(mask))) if ch == "1"]


def _as_mask(s: VertexSet | Iterable[int]) -> VertexSet:
    if isinstance(s, int):
        return s
    return vertex_set(s)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or row >> v & 1:
                raise ValueError(f"row {v} has a self-loop or out-of-range neighbour")

    @classmethod
    def from_rows(cls, rows: Iterable[int]) -> Graph:
        """Build from raw bitset rows, checking symmetry (O(|E|))."""
        g = cls(len(rows := tuple(rows)), rows)
        for v, row in enumerate(rows):
            for u in members(row):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def vertices(self) -> VertexSet:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u in range(self.n):
            out.extend((u, v) for v in members(self.adj[u] >> (u + 1) << (u + 1)))
        return out

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={edge_count(self)})"


def edge_count(g: Graph) -> int:
    return sum(row.bit_count() for row in g.adj) // 2


def edges_within(g: Graph, s: VertexSet | Iterable[int]) -> int:
    mask = _as_mask(s)
    return sum((g.adj[v] & mask).bit_count() for v in members(mask)) // 2


def edges_between(g: Graph, s: VertexSet | Iterable[int], t: VertexSet | Iterable[int]) -> int:
    """Number of edges with one end in ``s`` and the other in ``t``."""
    s_mask, t_mask = _as_mask(s), _as_mask(t)
    if s_mask & t_mask:
        raise ValueError("vertex sets must be disjoint")
    return sum((g.adj[v] & t_mask).bit_count() for v in members(s_mask))


def enumerate_triangles(g: Graph, within: VertexSet | None = None) -> list[tuple[int, int, int]]:
    """Triangles ``(a, b, c)`` with ``a < b < c``, in lexicographic order."""
    mask = g.vertices if within is None else within
    out = []
    for a in members(mask):
        higher_a = g.adj[a] & mask & ~((2 << a) - 1)
        for b in members(higher_a):
            common = higher_a & g.adj[b] & ~((2 << b) - 1)
            out.extend((a, b, c) for c in members(common))
    return out


def is_triangle_free(g: Graph, within: VertexSet | None = None) -> bool:
    mask = g.vertices if within is None else within
    for a in members(mask):
        nbrs = g.adj[a] & mask
        for b in members(nbrs):
            if nbrs & g.adj[b]:
                return False
    return True


def induced_subgraph(g: Graph, s: VertexSet | Iterable[int]) -> Graph:
    """Subgraph induced on ``s``, relabelled to ``0..|s|-1`` preserving order."""
    keep = members(_as_mask(s))
    index = {v: k for k, v in enumerate(keep)}
    return Graph.from_edges(
        len(keep),
        ((index[u], index[v]) for u, v in g.edges() if u in index and v in index),
    )


def complement(g: Graph) -> Graph:
    full = g.vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def min_degree(g: Graph) -> int:
    return min((row.bit_count() for row in g.adj), default=0)


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for u in members(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges()))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test; intended for n <= 9."""
    if g.n != h.n or edge_count(g) != edge_count(h):
        return False
    if sorted(map(int.bit_count, g.adj)) != sorted(map(int.bit_count, h.adj)):
        return False
    target = set(h.edges())
    g_edges = g.edges()
    deg_h = [h.degree(v) for v in range(h.n)]
    for perm in permutations(range(g.n)):
        if any(g.degree(v) != deg_h[perm[v]] for v in range(g.n)):
            continue
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in target for u, v in g_edges):
            return True
    return False


# -- serialisation ---------------------------------------------------------


def to_text(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty graph file")
    try:
        values = [int(tok) for tok in tokens]
    except ValueError as exc:
        raise ValueError(f"malformed graph file: {exc}") from None
    n, rest = values[0], values[1:]
    if len(rest) % 2:
        raise ValueError("malformed graph file: odd number of endpoint tokens")
    return Graph.from_edges(n, zip(rest[::2], rest[1::2]))


def read_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith(">>graph6<<"):
        text = text.lstrip()[len(">>graph6<<"):]
    first = text.strip().split("\n", 1)[0].strip()
    if first and not first.isdigit() and " " not in first:
        return from_graph6(first)
    return from_text(text)


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(to_text(g))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    else:
        head = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    bits = [int(g.has_edge(i, j)) for j in range(1, n) for i in range(j)]
    bits.extend([0] * (-len(bits) % 6))
    body = [
        sum(bit << (5 - k) for k, bit in enumerate(bits[pos:pos + 6])) + 63
        for pos in range(0, len(bits), 6)
    ]
    return bytes(head + body).decode("ascii")


def from_graph6(s: str) -> Graph:
    data = [ord(ch) - 63 for ch in s.strip()]
    if not data or any(not 0 <= x < 64 for x in data):
        raise ValueError("invalid graph6 string")
    if data[0] == 63:
        if len(data) < 4:
            raise ValueError("truncated graph6 header")
        n = data[1] << 12 | data[2] << 6 | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {need}")
    bits = (x >> (5 - k) & 1 for x in body for k in range(6))
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    return Graph.from_edges(n, (p for p, bit in zip(pairs, bits) if bit))


def iter_all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices, ordered by edge-subset index."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for code in range(1 << len(pairs)):
        rows = [0] * n
        k = 0
        while code:
            if code & 1:
                u, v = pairs[k]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            code >>= 1
            k += 1
        yield Graph(n, tuple(rows))
