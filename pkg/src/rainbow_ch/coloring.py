"""Edge colourings of complete graphs, stored along the canonical edge order."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph


def edge_index(n: int, u: int, v: int) -> int:
    """Position of ``{u, v}`` in the order (0,1), (0,2), ..., (n-2,n-1)."""
    if u == v:
        raise ValueError("a loop has no edge index")
    if u > v:
        u, v = v, u
    if not (0 <= u and v < n):
        raise ValueError(f"edge {(u, v)} out of range for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def all_edges(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


@dataclass(frozen=True)
class EdgeColoring:
    """Surjective colouring of K_n onto ``1..num_colors``."""

    n: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if len(self.colors) != self.n * (self.n - 1) // 2:
            raise ValueError(f"need {self.n * (self.n - 1) // 2} colours, got {len(self.colors)}")
        used = set(self.colors)
        if used and used != set(range(1, len(used) + 1)):
            raise ValueError("colours must be exactly 1..num_colors (surjective)")

    @classmethod
    def from_labels(cls, n: int, labels) -> EdgeColoring:
        """Relabel arbitrary hashable labels to 1..k by first appearance."""
        ids: dict = {}
        out = []
        for lab in labels:
            out.append(ids.setdefault(lab, len(ids) + 1))
        return cls(n, tuple(out))

    @classmethod
    def from_function(cls, n: int, fn) -> EdgeColoring:
        return cls.from_labels(n, (fn(u, v) for u, v in all_edges(n)))

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def color(self, u: int, v: int) -> int:
        return self.colors[edge_index(self.n, u, v)]

    def classes(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for e, c in zip(all_edges(self.n), self.colors):
            out.setdefault(c, []).append(e)
        return out

    def census(self) -> dict[int, int]:
        """Colour -> class size."""
        out: dict[int, int] = {}
        for c in self.colors:
            out[c] = out.get(c, 0) + 1
        return dict(sorted(out.items()))

    def merged(self, a: int, b: int) -> EdgeColoring:
        """Merge colour ``b`` into ``a`` and relabel."""
        return EdgeColoring.from_labels(self.n, (a if c == b else c for c in self.colors))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "num_colors": self.num_colors,
            "edges": [[u, v, c] for (u, v), c in zip(all_edges(self.n), self.colors)],
        }

    @classmethod
    def from_json(cls, data: dict) -> EdgeColoring:
        n = int(data["n"])
        slots: list = [None] * (n * (n - 1) // 2)
        for u, v, c in data["edges"]:
            k = edge_index(n, int(u), int(v))
            if slots[k] is not None:
                raise ValueError(f"pair {(u, v)} coloured twice")
            slots[k] = int(c)
        if any(c is None for c in slots):
            raise ValueError("colouring is not total")
        col = cls(n, tuple(slots))
        if "num_colors" in data and int(data["num_colors"]) != col.num_colors:
            raise ValueError("num_colors does not match the colour classes")
        return col


def write_coloring(c: EdgeColoring, path: str | Path) -> None:
    Path(path).write_text(json.dumps(c.to_json(), sort_keys=True) + "\n")


def read_coloring(path: str | Path) -> EdgeColoring:
    return EdgeColoring.from_json(json.loads(Path(path).read_text()))


def graph_coloring(g: Graph, *, other: bool = True) -> EdgeColoring:
    """Rainbow on ``g`` (colours 1..|E| in edge order), one extra colour elsewhere."""
    idx = {e: k + 1 for k, e in enumerate(g.edges())}
    extra = len(idx) + 1
    cols = tuple(idx.get(e, extra) for e in all_edges(g.n))
    if not other and extra in cols:
        raise ValueError("graph is not complete")
    return EdgeColoring(g.n, cols)
