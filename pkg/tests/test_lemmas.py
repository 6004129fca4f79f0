import json

import numpy as np
import pytest

from conftest import complete_bipartite, cycle, petersen
from oracles import bipartite, triangle_free_graphs
from rainbow_ch.coloring import graph_coloring
from rainbow_ch.constructions import ConstructionSpec, build_construction, build_lower_bound_coloring
from rainbow_ch.formulas import PartitionStats, poly_h
from rainbow_ch.graph import Graph, edge_count
from rainbow_ch.lemmas import (check_aes, check_appendix_bounds, check_global_bounds, check_instance,
                               check_representative_claims, check_stability_predicates,
                               check_tripartite_theorem, find_complete_tripartite, random_graph,
                               scan_for_counterexamples, stability_windows)
from rainbow_ch.tiling import ideal_partition, maximal_tiling_triple, partition_stats


def _reports(g):
    tr = maximal_tiling_triple(g)
    p = ideal_partition(g, tr)
    return {r.lemma: r for r in check_appendix_bounds(g, tr, p) + check_global_bounds(g, tr, p)}


def test_no_edges_inside_singletons():
    rng = np.random.default_rng(0)
    for _ in range(30):
        r = _reports(random_graph(9, 0.6, rng))["A.1a"]
        assert r.holds and r.lhs == 0


def test_two_edges_on_critical_vertex_trace():
    g = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 4), (5, 6), (0, 3), (0, 4), (0, 5), (0, 6)])
    r = _reports(g)["A.1d"]
    assert (r.lhs, r.rhs, r.holds) == (4, 8, True)
    assert "e(T1)" in _reports(g)["A.1f"].note


def test_two_isolated_triangles_trace():
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
    reps = _reports(g)
    # e(T3) counts the six triangle edges themselves
    assert (reps["A.1i"].lhs, reps["A.1i"].rhs) == (6, 14)
    # e(T4) = 0 is not below 8*C(0,2) + 0 - 28, so the sparse-T4 bound is not in force
    assert not reps["2.4"].guard_satisfied and reps["2.4"].holds is None
    assert reps["2.1"].holds


def test_global_bound_examples():
    g = build_construction(ConstructionSpec("E1", 9, 1)).graph
    tr = maximal_tiling_triple(g)
    st = partition_stats(ideal_partition(g, tr), tr)
    r = _reports(g)["2.1"]
    assert r.lhs == 24 and r.rhs == poly_h(st) and r.holds
    r = _reports(Graph.empty(6))["2.1"]
    assert (r.lhs, r.rhs) == (0, 0) and r.holds


def test_diagnostics_are_not_asserted():
    reps = _reports(build_construction(ConstructionSpec("E1", 12, 2)).graph)
    assert not reps["2.5ii"].asserted and not reps["2.5iii"].asserted
    assert all(not r.violated for r in reps.values())
    json.dumps([r.to_json() for r in reps.values()])


def test_aes_examples():
    r = check_aes(cycle(5))
    assert not r.guard_satisfied and r.holds is None
    r = check_aes(complete_bipartite(4, 4))
    assert r.guard_satisfied and r.holds
    assert not check_aes(petersen()).guard_satisfied


def test_aes_against_oracle_n6():
    for adj in triangle_free_graphs(6):
        g = Graph.from_edges(6, [(u, v) for u in range(6) for v in adj[u] if u < v])
        r = check_aes(g)
        if r.guard_satisfied:
            assert r.holds == bipartite(adj) is True


def test_stability_windows_boundaries():
    # n=50: 2n = 100 = 10^2, so i = 10 sits exactly on the window edge
    w = stability_windows(50, 5, PartitionStats(4, 1, 0, 0, 12, 10))
    assert w["i_boundary"] and not w["i_window"]
    assert w["t1_boundary"] and w["t1_window"]
    w = stability_windows(50, 5, PartitionStats(5, 1, 0, 0, 16, 0))
    assert w["m_boundary_high"] and w["m_window"]


def test_stability_precondition():
    assert check_stability_predicates(Graph.empty(9), 1)["precondition"] is False
    # E1(30,2) plus two edges inside Y1 has the required edge count
    g = build_construction(ConstructionSpec("E1", 30, 2)).graph
    g = g.with_edges([(2, 3), (4, 5)])
    rec = check_stability_predicates(g, 2)
    assert rec["edges"] == rec["required_edges"]
    assert rec["precondition"] in (True, False)
    if rec["precondition"]:
        assert set(rec["windows"]) >= {"t1_window", "m_window", "i_window"}
    rec = check_stability_predicates(g, 2, budget=5)
    assert rec["precondition"] == "indeterminate"


def test_representative_claims_e1_15_1():
    c = build_lower_bound_coloring(ConstructionSpec("E1", 15, 1))
    reps = check_representative_claims(c, 1)
    claims = [r for r in reps if r.lemma == "claim-4.2"]
    assert claims and all(r.holds for r in claims)
    (h_free,) = [r for r in reps if r.lemma == "claim-4.5"]
    assert h_free.holds
    assert not any(r.violated for r in reps)


def test_representative_claims_precondition_gate():
    c = graph_coloring(Graph.complete(9))  # rainbow 3K3 present
    reps = check_representative_claims(c, 1)
    assert all(not r.asserted for r in reps)
    assert reps[0].instance["precondition"] == "rainbow (t+2)K3 present"


def _planted(remove=None):
    # T1 vertices 0..38 (13 triangles), M vertices 39..48; K_{3,8,8} on A, B, C
    a, b, c = list(range(3)), list(range(3, 11)), list(range(11, 19))
    edges = [(u, v) for x, y in ((a, b), (a, c), (b, c)) for u in x for v in y]
    if remove:
        edges.remove(remove)
    return Graph.from_edges(49, edges)


def test_tripartite_planted():
    assert find_complete_tripartite(_planted(), (3, 8, 8)) is not None
    assert find_complete_tripartite(_planted(remove=(0, 3)), (3, 8, 8)) is None


def test_tripartite_vacuous():
    g = build_construction(ConstructionSpec("E1", 15, 1)).graph
    assert check_tripartite_theorem(g, 1)["status"] == "vacuous"


def test_check_instance_reports_both_orders():
    rng = np.random.default_rng(4)
    g = random_graph(10, 0.5, rng)
    res = check_instance(g, peel_seed=9)
    assert res["violations"] == [] and res["order_sensitive"] == []


def test_scan_exhaustive_n5():
    s = scan_for_counterexamples("exhaustive", 5)
    assert s.graphs == 1024 and s.ok


def test_scan_random_is_worker_independent(tmp_path):
    one = scan_for_counterexamples("random", 9, 120, seed=3, n_min=7)
    two = scan_for_counterexamples("random", 9, 120, seed=3, n_min=7, workers=2,
                                   trace_path=str(tmp_path / "t.jsonl"))
    assert one.to_json() == two.to_json()
    lines = (tmp_path / "t.jsonl").read_text().splitlines()
    assert len(lines) == 120


def test_scan_rejects_bad_modes():
    with pytest.raises(ValueError):
        scan_for_counterexamples("exhaustive", 7)
    with pytest.raises(ValueError):
        scan_for_counterexamples("random", 17, 10)
    with pytest.raises(ValueError):
        scan_for_counterexamples("sideways", 5)


@pytest.mark.slow
def test_scan_exhaustive_n6():
    s = scan_for_counterexamples("exhaustive", 6)
    assert s.graphs == 32768 and s.ok, s.to_json()


@pytest.mark.slow
def test_scan_random_n12_seed1():
    s = scan_for_counterexamples("random", 12, 10**5, seed=1)
    assert s.graphs == 10**5 and s.ok, s.to_json()
