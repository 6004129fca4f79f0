import importlib.util
import pathlib

import numpy as np
import pytest

from rainbow_ch import kernels
from rainbow_ch.lemmas import random_graph

BENCH = pathlib.Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_pick_backend_validation():
    with pytest.raises(ValueError):
        kernels.pick_backend(10, "fortran")
    with pytest.raises(ValueError):
        kernels.pick_backend(65, "numba")
    assert kernels.pick_backend(65) == "python"


@pytest.mark.parametrize("target", [-1, 1, 2, 3])
def test_max_tiling_parity_with_target(target):
    rng = np.random.default_rng(target + 10)
    for _ in range(30):
        g = random_graph(int(rng.integers(6, 16)), 0.5, rng)
        a = kernels.max_tiling(g.adj, 10**7, target, backend="python")
        b = kernels.max_tiling(g.adj, 10**7, target, backend="numba")
        assert a == b


def test_budget_parity():
    g = random_graph(45, 0.15, np.random.default_rng(0))
    a = kernels.max_tiling(g.adj, 50, backend="python")
    b = kernels.max_tiling(g.adj, 50, backend="numba")
    assert a == b and a[3] is False


def test_benchmark_cases_agree():
    spec = importlib.util.spec_from_file_location("bench_kernels", BENCH)
    bench = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(bench)
    for name in ("max_tiling n=24 x20", "maximal_triple n=15 x40", "ar_search n=6 s=2 k=12"):
        fn = bench.CASES[name]
        assert fn("python") == fn("numba"), name
