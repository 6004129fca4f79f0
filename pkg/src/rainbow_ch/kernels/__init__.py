"""Backend dispatch for the search kernels.

The compiled backend is used when numba imports and the environment variable
``RAINBOW_CH_NUMBA`` is not set to ``0``; instances with more than 64
vertices always run on the pure-Python backend.  Pass ``backend="python"`` or
``backend="numba"`` to force one.
"""

from __future__ import annotations

import os

import numpy as np

from . import _py

try:
    from . import _nb
except ImportError:  # numba missing
    _nb = None

NUMBA_WORD = 64


def numba_enabled() -> bool:
    flag = os.environ.get("RAINBOW_CH_NUMBA", "1").strip().lower()
    return _nb is not None and flag not in {"0", "false", "no", "off"}


def pick_backend(n: int, backend: str | None = None) -> str:
    if backend is None:
        return "numba" if numba_enabled() and n <= NUMBA_WORD else "python"
    if backend not in {"numba", "python"}:
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba":
        if _nb is None:
            raise RuntimeError("numba backend requested but numba is not importable")
        if n > NUMBA_WORD:
            raise ValueError(f"numba kernels handle at most {NUMBA_WORD} vertices, got {n}")
    return backend


def _words(adj) -> np.ndarray:
    return np.array([int(r) for r in adj], dtype=np.uint64)


def max_tiling(adj, budget: int, target: int = -1, backend: str | None = None):
    """``(size, triangles, nodes, complete)`` for the maximum triangle tiling."""
    if pick_backend(len(adj), backend) == "python":
        return _py.max_tiling(adj, budget, target)
    size, tris, nodes, complete = _nb.max_tiling(_words(adj), budget, target)
    return int(size), [tuple(int(x) for x in row) for row in tris], int(nodes), bool(complete)


def maximal_triple(adj, budget: int, backend: str | None = None):
    """``(triangles, matching, singletons, nodes, complete)``."""
    if pick_backend(len(adj), backend) == "python":
        return _py.maximal_triple(adj, budget)
    tri, mat, sing, nodes, complete = _nb.maximal_triple(_words(adj), budget)
    return (
        [tuple(int(x) for x in row) for row in tri],
        [tuple(int(x) for x in row) for row in mat],
        [int(x) for x in sing],
        int(nodes),
        bool(complete),
    )


def rainbow_search(n: int, tri_vmask, tri_colors, s: int, budget: int, num_colors: int,
                   backend: str | None = None):
    """``(indices or None, nodes, complete)``; see ``_py.rainbow_search``."""
    if pick_backend(n, backend) == "python" or len(tri_vmask) == 0:
        return _py.rainbow_search(tri_vmask, tri_colors, s, budget)
    vm = _words(tri_vmask)
    cols = np.asarray(tri_colors, dtype=np.int64).reshape(-1, 3)
    chosen, nodes, complete = _nb.rainbow_search(vm, cols, s, budget, num_colors)
    if not complete:
        return None, int(nodes), False
    found = len(chosen) == s
    return ([int(i) for i in chosen] if found else None), int(nodes), True


def ar_search(n: int, tilings, tiling_last, k: int, budget: int, backend: str | None = None):
    """``(colouring or None, nodes, complete)``; see ``_py.ar_search``."""
    if pick_backend(n, backend) == "python":
        return _py.ar_search(n, tilings, tiling_last, k, budget)
    tilings = np.asarray(tilings, dtype=np.int64)
    last = np.asarray(tiling_last, dtype=np.int64)
    color, nodes, complete = _nb.ar_search(n, tilings, last, k, budget)
    if not complete:
        return None, int(nodes), False
    return (color if len(color) else None), int(nodes), True
