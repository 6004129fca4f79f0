from fractions import Fraction

import numpy as np
import pytest

from oracles import sym_f, sym_h, sym_q1, value
from rainbow_ch.facts import FACTS, SAMPLERS, _check, _check_23, scan_fact_inequalities


def e1_ref(n, t):
    r = n - t
    return Fraction(t * (t - 1), 2) + t * r + ((r + 1) // 2) * (r // 2)


def fact_ref(fact, d):
    """(lhs, rhs) as exact fractions, straight from the statements."""
    n = d["n"]
    if fact in ("2.2a", "2.2b"):
        t, m, i = d["t"], d["m"], d["i"]
        if fact == "2.2a":
            return value(sym_h, (0, t + 1, 0, 0, m, i)), e1_ref(n, t) - Fraction(n, 9) - Fraction(49, 12)
        return value(sym_h, (t + 1, 0, 0, 0, m, i)), e1_ref(n, t) + Fraction(-i * i + 2 * n - 2 * t - 2, 4)
    s = tuple(d[k] for k in ("t1", "t2", "t3", "t4", "m", "i"))
    t = d["t"]
    if fact == "4.1":
        return value(sym_q1, s), e1_ref(n, t) + Fraction(1, 4)
    if fact == "4.2":
        return value(sym_h, s), e1_ref(n, t) + Fraction(n - t - 1, 2)
    return value(sym_h, s), e1_ref(n, t) + t + 6


def _rows(d, k):
    return {key: int(v[k]) for key, v in d.items()}


@pytest.mark.parametrize("fact", [f for f in FACTS if f != "2.3"])
@pytest.mark.parametrize("n_range", [(27, 80), (3000, 10000)])
def test_vectorised_check_matches_exact_oracle(fact, n_range):
    rng = np.random.default_rng(1)
    d = SAMPLERS[fact](rng, 150, *n_range)
    lhs, rhs, scale = _check(fact, d)
    for k in range(150):
        row = _rows(d, k)
        a, b = fact_ref(fact, row)
        assert Fraction(int(lhs[k]), scale) == a
        assert Fraction(int(rhs[k]), scale) == b


@pytest.mark.parametrize("fact", FACTS)
def test_samples_are_admissible(fact):
    rng = np.random.default_rng(2)
    d = SAMPLERS[fact](rng, 2000, 27, 5000)
    n = d["n"]
    if "t" in d:
        t = d["t"]
        assert (t >= 1).all() and (9 * (t + 2) <= 2 * n - 6).all()
        assert (2 * d["m"] + d["i"] == n - 3 * (t + 1)).all()
    if "t1" in d:
        tri = d["t1"] + d["t2"] + d["t3"] + d["t4"]
        assert (np.stack([d[k] for k in ("t1", "t2", "t3", "t4", "m", "i")]) >= 0).all()
        if fact == "2.3":
            assert (3 * tri + 2 * d["m"] + d["i"] == n).all()
        else:
            assert (tri == d["t"] + 1).all()
            assert (d["i"] ** 2 < 2 * n).all()
            assert ((d["t"] - 1 <= d["t1"]) & (d["t1"] <= d["t"] + 1)).all()
    if fact == "4.2-moreover":
        assert (d["t1"] <= d["t"]).all()


def test_fact_23_pointwise_against_oracle():
    rng = np.random.default_rng(3)
    d = SAMPLERS["2.3"](rng, 300, 27, 400)
    ok, f, cap, h, h_moved = _check_23(d)
    for k in range(300):
        r = _rows(d, k)
        s = (r["t1"], r["t2"], r["t3"], r["t4"], r["m"], r["i"])
        a = value(sym_f, s)
        b = max(value(sym_f, (s[0] + s[1], 0) + s[2:]), value(sym_f, (0, s[0] + s[1]) + s[2:]))
        strict = s[0] * s[1] > 0
        hm = value(sym_h, s[:2] + (0, s[2] + s[3]) + s[4:])
        assert bool(ok[k]) == ((a < b if strict else a <= b) and value(sym_h, s) <= hm)


def test_fact_23_equality_when_one_class_empty():
    d = {k: np.array([v]) for k, v in zip(("t1", "t2", "t3", "t4", "m", "i", "n"),
                                          (0, 5, 2, 1, 3, 4, 30))}
    ok, f, cap, _, _ = _check_23(d)
    assert ok[0] and f[0] == cap[0]
    assert value(sym_f, (0, 5, 2, 1, 3, 4)) >= value(sym_f, (5, 0, 2, 1, 3, 4))


@pytest.mark.parametrize("fact", FACTS)
def test_large_n_scan_clean(fact):
    rep = scan_fact_inequalities(fact, (3000, 10000), 20000, seed=4)
    assert rep.checked == 20000 and rep.violations == 0 and rep.ok


def test_scan_example_22a_at_5000():
    rep = scan_fact_inequalities("2.2a", (5000, 5000), 10**5, seed=0)
    assert rep.violations == 0


def test_small_n_violations_are_informational():
    rep = scan_fact_inequalities("2.2a", (27, 60), 50000, seed=0)
    assert rep.informational and rep.ok
    assert rep.violations > 0
    w = rep.witnesses[0]
    a, b = fact_ref("2.2a", w["params"])
    assert a > b and str(a) == w["lhs"]


def test_scan_independent_of_workers():
    a = scan_fact_inequalities("4.2", (3000, 4000), 140000, seed=9, workers=1)
    b = scan_fact_inequalities("4.2", (3000, 4000), 140000, seed=9, workers=2)
    assert a.to_json() == b.to_json()


def test_scan_errors():
    with pytest.raises(ValueError):
        scan_fact_inequalities("9.9")
    with pytest.raises(ValueError):
        scan_fact_inequalities("4.1", (10, 20))
    with pytest.raises(ValueError):
        scan_fact_inequalities("4.1", (50, 40))
