import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_bipartite, cycle, petersen
from oracles import adjacency, bipartite, triangles
from rainbow_ch.constructions import ConstructionSpec, build_construction
from rainbow_ch.graph import (Graph, complement, edge_count, edges_between, edges_within,
                              enumerate_triangles, from_graph6, induced_subgraph, is_bipartite,
                              is_isomorphic, iter_all_graphs, members, min_degree, read_graph,
                              to_graph6, vertex_set, write_graph)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


def test_edge_count_examples():
    assert edge_count(Graph.empty(5)) == 0
    assert edge_count(Graph.complete(6)) == 15
    assert edge_count(build_construction(ConstructionSpec("E1", 9, 1)).graph) == 24


def test_edges_between_and_within():
    k4 = Graph.complete(4)
    assert edges_between(k4, {0, 1}, {2, 3}) == 4
    assert edges_between(k4, set(), {0, 1, 2}) == 0
    pg = build_construction(ConstructionSpec("E1", 9, 1))
    assert edges_between(pg.graph, pg.parts["X"], pg.parts["Y1"]) == 4
    assert edges_within(Graph.complete(5), range(5)) == 10
    assert edges_within(complete_bipartite(3, 4), range(3)) == 0
    pg = build_construction(ConstructionSpec("E2", 20, 2))
    assert members(pg.parts["X"]) == [0, 1, 2, 3, 4]
    assert edges_within(pg.graph, pg.parts["X"]) == 10


def test_edges_between_rejects_overlap():
    with pytest.raises(ValueError):
        edges_between(Graph.complete(4), {0, 1}, {1, 2})


def test_triangles_examples():
    assert enumerate_triangles(cycle(5)) == []
    assert len(enumerate_triangles(Graph.complete(4))) == 4
    k6m = Graph.complete(6).without_edges([(0, 1), (2, 3), (4, 5)])
    assert len(enumerate_triangles(k6m)) == 8


def test_small_helpers():
    assert edge_count(complement(Graph.complete(7))) == 0
    assert min_degree(cycle(5)) == 2
    pg = build_construction(ConstructionSpec("E1", 11, 1))
    assert is_bipartite(induced_subgraph(pg.graph, pg.parts["Y1"] | pg.parts["Y2"]))
    assert not is_bipartite(cycle(5))
    assert is_bipartite(petersen()) is False


def test_members_roundtrip():
    assert members(0) == []
    assert members(vertex_set([0, 5, 63, 200])) == [0, 5, 63, 200]
    with pytest.raises(ValueError):
        members(-1)


def test_from_rows_rejects_asymmetry():
    with pytest.raises(ValueError):
        Graph.from_rows([0b10, 0b00])
    with pytest.raises(ValueError):
        Graph(2, (0b01, 0))  # self-loop


def test_iter_all_graphs_counts():
    assert sum(1 for _ in iter_all_graphs(4)) == 64


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_triangles_match_brute_force(g):
    assert enumerate_triangles(g) == triangles(adjacency(g.n, g.edges()))


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_bipartite_and_complement(g):
    assert is_bipartite(g) == bipartite(adjacency(g.n, g.edges()))
    assert edge_count(g) + edge_count(complement(g)) == g.n * (g.n - 1) // 2
    assert complement(complement(g)) == g


@settings(max_examples=150, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_partition_sum(g, rnd):
    s = {v for v in range(g.n) if rnd.random() < 0.5}
    rest = set(range(g.n)) - s
    assert edges_within(g, s) + edges_within(g, rest) + edges_between(g, s, rest) == edge_count(g)


@settings(max_examples=100, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_graph6_and_isomorphism(g, rnd):
    assert from_graph6(to_graph6(g)) == g
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert is_isomorphic(g, h)


def test_graph_file_roundtrip(tmp_path):
    g = petersen()
    write_graph(g, tmp_path / "p.graph")
    assert read_graph(tmp_path / "p.graph") == g
    (tmp_path / "p.g6").write_text(to_graph6(g) + "\n")
    assert read_graph(tmp_path / "p.g6") == g


def test_large_graph_graph6():
    g = build_construction(ConstructionSpec("E1", 100, 10)).graph
    assert from_graph6(to_graph6(g)) == g
