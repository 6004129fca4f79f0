from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import SHIFT_CLAIMS, sym_f, sym_g, sym_h, sym_q1, symbolic_residual, value
from rainbow_ch.formulas import (IDENTITIES, PartitionStats, ar_first_interval, check_identity, e1,
                                 ex_abhp, first_interval_limit, poly_f, poly_g, poly_h, poly_q1,
                                 sweep_identities, xi_piecewise)

stats6 = st.tuples(*[st.integers(0, 40)] * 6)


def test_poly_examples():
    assert poly_f((0,) * 6) == 0
    assert poly_f((1, 0, 0, 0, 1, 0)) == 7
    assert poly_f((0, 1, 0, 0, 0, 0)) == 5
    assert poly_h((0,) * 6) == 0
    assert poly_h((0, 0, 0, 1, 0, 0)) == 8
    assert poly_h((1, 0, 0, 0, 2, 3)) == 27
    assert poly_g((0,) * 6) == -28
    assert poly_g((0, 0, 0, 1, 0, 0)) == -13
    assert poly_g((0, 0, 0, 2, 0, 0)) == 10
    assert poly_q1((0,) * 6) == 0
    assert poly_q1((1, 0, 0, 0, 1, 0)) == poly_h((1, 0, 0, 0, 1, 0)) - 2
    assert poly_q1((2, 0, 0, 0, 3, 1)) == poly_h((2, 0, 0, 0, 3, 1)) - 5 == 48


@settings(max_examples=300, deadline=None)
@given(stats6)
def test_polys_match_symbolic_oracle(s):
    assert Fraction(poly_f(s)) == value(sym_f, s)
    assert Fraction(poly_h(s)) == value(sym_h, s)
    assert Fraction(poly_g(s)) == value(sym_g, s)
    assert Fraction(poly_q1(s)) == value(sym_q1, s)


def test_polys_accept_stats_and_arrays():
    s = PartitionStats(2, 1, 3, 0, 1, 4)
    assert poly_h(s) == poly_h(s.as_tuple())
    arr = tuple(np.array([v, v + 1]) for v in s.as_tuple())
    assert poly_h(arr)[0] == poly_h(s)
    assert poly_h(arr)[1] == poly_h(tuple(v + 1 for v in s.as_tuple()))


@pytest.mark.parametrize("key", sorted(SHIFT_CLAIMS))
def test_identity_is_polynomial_identity(key):
    # the stated difference holds as polynomials, not just at sampled points
    assert symbolic_residual(key) == 0


def test_identity_examples():
    v = check_identity(3, (2, 1, 3, 0, 1, 4), 2)
    assert v.holds and v.lhs == v.rhs == 2
    v = check_identity(8, (0, 0, 5, 1, 2, 2), 3)
    assert v.holds and v.lhs == v.rhs == 21
    for s in [(0,) * 6, (3, 1, 4, 1, 5, 9)]:
        v = check_identity(1, s, 0)
        assert v.holds and v.lhs == v.rhs == 0


def test_identity_rejects_negative_argument():
    with pytest.raises(ValueError):
        check_identity(3, (0, 0, 1, 0, 0, 0), 2)


def test_identity_sweep_all_hold():
    out = sweep_identities(points=2000, seed=5)
    assert sorted(out) == sorted(IDENTITIES)
    assert all(v == [] for v in out.values())


def test_xi_examples():
    assert xi_piecewise(100, 10).value == 2970
    assert xi_piecewise(9, 0).value == 20
    assert xi_piecewise(100, 31).value == 4754
    assert xi_piecewise(100, 31).branch == 5
    with pytest.raises(ValueError, match="E5"):
        xi_piecewise(100, 33)
    with pytest.raises(ValueError):
        xi_piecewise(100, 34)


def test_ex_abhp_examples():
    assert ex_abhp(100, 10).value == 2970
    assert ex_abhp(6, 1).value == 12
    with pytest.raises(ValueError):
        ex_abhp(9, 3)


def test_xi_branch1_matches_abhp_branch1():
    for n in range(30, 120):
        for t in range(0, n // 3 + 1):
            x, a = xi_piecewise(n, t, check_validity=False), ex_abhp(n, t, check_validity=False)
            if x.branch == 1 and a.branch == 1:
                assert x.value == a.value == e1(n, t)


def test_ar_first_interval():
    assert ar_first_interval(100, 10) == 2972
    assert ar_first_interval(20, 1) == 111
    assert ar_first_interval(9, 0, override=True) == 22
    with pytest.raises(ValueError):
        ar_first_interval(9, 0)
    assert first_interval_limit(30) == Fraction(54, 9) - 2
