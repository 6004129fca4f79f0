"""Time the numba and pure-Python search kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case runs once untimed on the numba side to pay for compilation, then
``repeat`` timed runs per backend; results (and node counts) must agree.
"""

import argparse
import time

import numpy as np

from rainbow_ch import kernels
from rainbow_ch.constructions import ConstructionSpec, build_lower_bound_coloring
from rainbow_ch.graph import vertex_set
from rainbow_ch.lemmas import random_graph
from rainbow_ch.rainbow import _tiling_edge_rows, rainbow_triangles


def _graphs(count, n, p, seed):
    rng = np.random.default_rng(seed)
    return [random_graph(n, p, rng) for _ in range(count)]


def case_max_tiling(backend):
    out = []
    for g in _graphs(20, 24, 0.4, 1):
        size, _, nodes, _ = kernels.max_tiling(g.adj, 10**8, backend=backend)
        out.append((size, nodes))
    return out


def case_maximal_triple(backend):
    out = []
    for g in _graphs(40, 15, 0.3, 2):
        tri, mat, _, nodes, _ = kernels.maximal_triple(g.adj, 10**8, backend=backend)
        out.append((len(tri), len(mat), nodes))
    return out


def _rainbow_input():
    # lower-bound colouring: no rainbow 4K3, so the search is exhaustive
    c = build_lower_bound_coloring(ConstructionSpec("E1", 18, 2))
    tris = rainbow_triangles(c)
    vm = [vertex_set(t) for t, _ in tris]
    cols = np.array([[x - 1 for x in cs] for _, cs in tris], dtype=np.int64)
    return c, vm, cols


def case_rainbow(backend):
    c, vm, cols = _rainbow_input()
    idx, nodes, _ = kernels.rainbow_search(c.n, vm, cols, 4, 10**8, c.num_colors, backend=backend)
    return idx, nodes


def case_ar(backend):
    rows = _tiling_edge_rows(6, 2)
    colour, nodes, _ = kernels.ar_search(6, rows, rows.max(axis=1), 12, 10**8, backend=backend)
    return (None if colour is None else [int(x) for x in colour]), nodes


CASES = {"max_tiling n=24 x20": case_max_tiling,
         "maximal_triple n=15 x40": case_maximal_triple,
         "rainbow_search E1(18,2) s=4": case_rainbow,
         "ar_search n=6 s=2 k=12": case_ar}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.numba_enabled():
        print("numba backend disabled; only timing the Python kernels")
    print(f"{'case':28s} {'python s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for name, fn in CASES.items():
        times = {}
        results = {}
        for backend in ("python", "numba"):
            if backend == "numba" and not kernels.numba_enabled():
                continue
            if backend == "numba":
                fn(backend)  # compile
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[backend] = fn(backend)
                best = min(best, time.perf_counter() - t0)
            times[backend] = best
        if len(results) == 2 and results["python"] != results["numba"]:
            raise SystemExit(f"{name}: backends disagree")
        nb = times.get("numba")
        sp = f"{times['python'] / nb:8.1f}" if nb else "       -"
        print(f"{name:28s} {times['python']:10.4f} {nb if nb else float('nan'):10.4f} {sp}")


if __name__ == "__main__":
    main()
