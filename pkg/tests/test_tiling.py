import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import cycle, petersen
from oracles import adjacency, best_triple_values
from rainbow_ch.constructions import ConstructionSpec, build_construction
from rainbow_ch.errors import Indeterminate
from rainbow_ch.graph import Graph, edge_count
from rainbow_ch.lemmas import random_graph
from rainbow_ch.tiling import (TilingTriple, edge_sees, find_tiling, ideal_partition,
                               max_tiling_number, maximal_tiling_triple, part_edge_profile,
                               partition_stats, vertex_sees)
from test_graph import graphs


def _shape(tr):
    return len(tr.triangles), tr.m, tr.i


def test_max_tiling_number_examples():
    assert max_tiling_number(Graph.complete(9)) == 3
    assert max_tiling_number(petersen()) == 0
    assert max_tiling_number(build_construction(ConstructionSpec("E1", 12, 2)).graph) == 2


def test_maximal_triple_examples():
    assert _shape(maximal_tiling_triple(cycle(5))) == (0, 2, 1)
    assert _shape(maximal_tiling_triple(Graph.complete(7))) == (2, 0, 1)
    g = build_construction(ConstructionSpec("E1", 9, 1)).graph
    tr = maximal_tiling_triple(g)
    assert _shape(tr) == (1, 3, 0)
    tr.validate(g)


def test_budget_exhaustion_is_indeterminate():
    g = Graph.complete(30)
    with pytest.raises(Indeterminate):
        max_tiling_number(g, budget=3)
    with pytest.raises(Indeterminate):
        maximal_tiling_triple(g, budget=3)


def test_find_tiling():
    g = Graph.complete(7)
    tris = find_tiling(g, 2)
    assert len(tris) == 2 and len({v for t in tris for v in t}) == 6
    assert find_tiling(g, 3) is None


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=10))
def test_maximal_triple_matches_oracle(g):
    tr = maximal_tiling_triple(g)
    tr.validate(g)
    assert (len(tr.triangles), tr.m) == best_triple_values(adjacency(g.n, g.edges()))


@pytest.mark.parametrize("backend", ["python", "numba"])
def test_backends_agree(backend):
    rng = np.random.default_rng(7)
    for _ in range(40):
        g = random_graph(int(rng.integers(5, 14)), float(rng.choice([0.3, 0.6])), rng)
        ref = maximal_tiling_triple(g, backend="python")
        assert maximal_tiling_triple(g, backend=backend) == ref
        assert max_tiling_number(g, backend=backend) == len(ref.triangles)


def test_numba_refuses_large_graphs():
    with pytest.raises(ValueError):
        max_tiling_number(Graph.complete(70), backend="numba")
    assert max_tiling_number(Graph.complete(70), budget=10**6) == 23


def test_env_flag_selects_python(monkeypatch):
    from rainbow_ch import kernels

    monkeypatch.setenv("RAINBOW_CH_NUMBA", "0")
    assert kernels.pick_backend(10) == "python"
    monkeypatch.setenv("RAINBOW_CH_NUMBA", "1")
    assert kernels.pick_backend(10) == ("numba" if kernels._nb is not None else "python")
    assert kernels.pick_backend(100) == "python"


def test_sees():
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 0), (4, 0)])
    w = edge_sees(g, (3, 4), (0, 1, 2))
    assert w.seen_vertices == (0,)
    g2 = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 0)])
    assert edge_sees(g2, (3, 4), (0, 1, 2)) is None
    g3 = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (3, 1), (3, 2)])
    assert vertex_sees(g3, 3, (0, 1, 2)).seen_vertices == (1, 2)
    assert vertex_sees(g, 3, (0, 1, 2)) is None
    with pytest.raises(ValueError):
        edge_sees(g, (0, 3), (0, 1, 2))


def _two_edges_on_x():
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (5, 6), (0, 3), (0, 4), (0, 5), (0, 6)]
    return Graph.from_edges(7, edges)


def test_partition_t1_with_critical_vertex():
    g = _two_edges_on_x()
    tr = maximal_tiling_triple(g)
    p = ideal_partition(g, tr)
    assert partition_stats(p, tr).as_tuple() == (1, 0, 0, 0, 2, 0)
    (tri,) = p.t1
    assert p.critical[tri] == 0
    prof = part_edge_profile(g, tr, p)
    assert prof.e("T1", "M") == 4
    assert prof.e("M") == 2
    assert sum(prof.e("I", b) for b in ("T1", "T2", "T3", "T4", "M", "I")) == 0
    assert prof.total() == edge_count(g)


def test_partition_t2_by_edge_and_singleton():
    # triangle 012, M-edge 34 seeing 0, singleton 5 seeing {1, 2}; triple given explicitly
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 0), (4, 0), (5, 1), (5, 2)])
    tr = TilingTriple.build([(0, 1, 2)], [(3, 4)], [5])
    assert ideal_partition(g, tr).t2 == ((0, 1, 2),)
    assert ideal_partition(g, tr, t2_rule="triangles").t2 == ((0, 1, 2),)


def test_partition_two_isolated_triangles():
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    tr = maximal_tiling_triple(g)
    p = ideal_partition(g, tr)
    assert len(p.t3) == 2 and not p.t4
    assert part_edge_profile(g, tr, p).e("T3") == 6


def test_profile_triangle_free_and_e1():
    g = petersen()
    tr = maximal_tiling_triple(g)
    prof = part_edge_profile(g, tr, ideal_partition(g, tr))
    assert all(prof.e(a, b) == 0 for a in ("T1", "T2", "T3", "T4")
               for b in ("T1", "T2", "T3", "T4", "M", "I"))
    g = build_construction(ConstructionSpec("E1", 9, 1)).graph
    tr = maximal_tiling_triple(g)
    prof = part_edge_profile(g, tr, ideal_partition(g, tr))
    assert prof.total() == edge_count(g) == 24
    assert prof.to_csv().splitlines()[0] == ",T1,T2,T3,T4,M,I"


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=10))
def test_partition_is_a_partition(g):
    tr = maximal_tiling_triple(g)
    for rng in (None, random.Random(3)):
        p = ideal_partition(g, tr, rng=rng)
        got = sorted(itertools.chain(*p.classes))
        assert got == sorted(tr.triangles)
        assert part_edge_profile(g, tr, p).total() == edge_count(g)


def test_triple_json_roundtrip():
    tr = maximal_tiling_triple(Graph.complete(8))
    assert TilingTriple.from_json(tr.to_json()) == tr


def test_bad_triple_rejected():
    g = cycle(5)
    with pytest.raises(ValueError):
        TilingTriple.build([(0, 1, 2)], [], [3, 4]).validate(g)
    with pytest.raises(ValueError):
        TilingTriple.build([], [(0, 1)], [2, 3]).validate(g)
