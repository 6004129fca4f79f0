import itertools

import pytest

from oracles import adjacency, max_disjoint_triangles, rainbow_disjoint_triangles
from rainbow_ch.coloring import all_edges
from rainbow_ch.constructions import (E_FAMILIES, FAMILIES, ConstructionSpec, build_construction,
                                      build_lower_bound_coloring, max_tiling_of_construction,
                                      part_sizes, regenerate, verify_lower_bound_coloring,
                                      xi_from_constructions)
from rainbow_ch.errors import Verdict
from rainbow_ch.formulas import e5
from rainbow_ch.graph import Graph, edge_count, is_isomorphic, members


def test_e1_9_1():
    pg = build_construction(ConstructionSpec("E1", 9, 1))
    assert edge_count(pg.graph) == 24
    assert tuple(part_sizes(pg.spec).values()) == (1, 4, 4)


def test_e5_20_3_has_path_on_y():
    pg = build_construction(ConstructionSpec("E5", 20, 3))
    assert edge_count(pg.graph) == 96
    ys = members(pg.parts["Y"])
    assert len(ys) == 6
    assert sum(pg.graph.has_edge(u, v) for u, v in itertools.combinations(ys, 2)) == 5


def test_gamma2_6_1_is_k6_minus_triangle(k6_minus_triangle):
    g = build_construction(ConstructionSpec("G2", 6, 1)).graph
    assert edge_count(g) == 12
    assert is_isomorphic(g, k6_minus_triangle)


def test_invalid_spec_names_constraint():
    with pytest.raises(ValueError, match="6t - n \\+ 6"):
        build_construction(ConstructionSpec("E4", 15, 1))
    with pytest.raises(ValueError):
        build_construction(ConstructionSpec("E5", 20, 5))
    with pytest.raises(ValueError):
        ConstructionSpec("E1", 9, 1, y1=2).validate()


@pytest.mark.parametrize("family", FAMILIES)
def test_small_builds_match_closed_form_and_regeneration(family):
    for n in range(3, 40):
        for t in range(0, n // 3 + 1):
            spec = ConstructionSpec(family, n, t)
            if spec.violations():
                continue
            pg = build_construction(spec)
            assert edge_count(pg.graph) == spec.closed_form()
            assert regenerate(pg) == pg.graph


def test_g4_unbalanced_and_rival_e3():
    spec = ConstructionSpec("G4", 20, 5, y1=1)
    assert edge_count(build_construction(spec).graph) == spec.closed_form()
    rival = ConstructionSpec("E3", 12, 1, rival=True)
    assert part_sizes(rival)["X"] == 3
    assert edge_count(build_construction(rival).graph) == rival.closed_form()


def test_tiling_numbers():
    assert max_tiling_of_construction(ConstructionSpec("E1", 12, 2)) == 2
    assert max_tiling_of_construction(ConstructionSpec("E1", 12, 0)) == 0
    assert max_tiling_of_construction(ConstructionSpec("G2", 6, 1)) == 1


@pytest.mark.parametrize("family", FAMILIES)
def test_tiling_number_is_t_plus_one_at_most(family):
    # the constructions are (t+1)K3-free in their own families' sense: at most t+1 triangles
    for n, t in [(12, 1), (13, 2), (14, 2), (15, 3)]:
        spec = ConstructionSpec(family, n, t)
        if spec.violations():
            continue
        g = build_construction(spec).graph
        nu = max_tiling_of_construction(spec)
        assert nu == max_disjoint_triangles(adjacency(n, g.edges()))


def test_lower_bound_colourings():
    c = build_lower_bound_coloring(ConstructionSpec("E1", 9, 1))
    assert c.num_colors == 25
    c = build_lower_bound_coloring(ConstructionSpec("E5", 20, 3))
    assert c.num_colors == 97 == e5(20, 3) + 1
    census = c.census()
    assert sum(census.values()) == 190
    # clique colours are singletons; outside vertex i owns 14 edges to K plus one per later v_j
    assert [census[c] for c in range(1, 92)] == [1] * 91
    assert [census[91 + i] for i in range(1, 7)] == [14 + 6 - i for i in range(1, 7)]
    assert build_lower_bound_coloring(ConstructionSpec("E3", 12, 1)).num_colors == 39
    with pytest.raises(ValueError):
        build_lower_bound_coloring(ConstructionSpec("G1", 9, 1))


def test_e5_colouring_allowed_at_3t_plus_5():
    c = build_lower_bound_coloring(ConstructionSpec("E5", 11, 2))
    assert c.num_colors == 55


@pytest.mark.parametrize("spec", [ConstructionSpec("E1", 15, 1), ConstructionSpec("E5", 18, 2),
                                  ConstructionSpec("E2", 12, 1), ConstructionSpec("E3", 10, 1)])
def test_lower_bound_colouring_has_no_rainbow_tiling(spec):
    v = verify_lower_bound_coloring(spec)
    assert v.verdict is Verdict.HOLDS


@pytest.mark.parametrize("spec", [ConstructionSpec("E1", 9, 1), ConstructionSpec("E3", 10, 1)])
def test_colouring_agrees_with_brute_force(spec):
    c = build_lower_bound_coloring(spec)
    assert not rainbow_disjoint_triangles(c.n, c.color, spec.t + 2)
    # one fewer triangle is always attainable in these colourings
    assert rainbow_disjoint_triangles(c.n, c.color, spec.t + 1)


def test_rainbow_k9_negative_control():
    from rainbow_ch.coloring import graph_coloring
    from rainbow_ch.rainbow import find_rainbow_tiling

    c = graph_coloring(Graph.complete(9))
    assert c.num_colors == 36
    assert find_rainbow_tiling(c, 3) is not None


def test_verify_indeterminate_on_tiny_budget():
    v = verify_lower_bound_coloring(ConstructionSpec("E1", 15, 1), budget=5)
    assert v.verdict is Verdict.INDETERMINATE


def test_xi_from_constructions_examples():
    assert xi_from_constructions(100, 10) == (2970, "E1")
    assert xi_from_constructions(12, 0)[0] == 36
    best = max(edge_count(build_construction(ConstructionSpec(f, 9, 3)).graph)
               for f in E_FAMILIES if not ConstructionSpec(f, 9, 3).violations())
    assert xi_from_constructions(9, 3)[0] == best
    with pytest.raises(ValueError):
        xi_from_constructions(3, 5)
