import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import moserbranch as mb
from moserbranch.series import (PolyQ, SeriesPoly, boundary_recurrence,
                                exp_minus_one)
from oracle_tools import j0_first_zero, j0_series_derivative

A = PolyQ.symbol("a")
B = PolyQ.symbol("b")
T = PolyQ.symbol("t")
LAM = PolyQ.symbol("lam")


# ------------------------------------------------------------ recurrence

def test_recurrence_first_entries():
    rec = boundary_recurrence(6)
    assert rec[2] == -A
    assert rec[3] == (PolyQ.const(2) - LAM) * A


def test_recurrence_higher_orders():
    rec = boundary_recurrence(6)
    assert rec[4] == (2 * LAM - PolyQ.const(6)) * A
    assert rec[5] == (PolyQ.const(24) - 7 * LAM + LAM * LAM) * A \
        - 6 * LAM * A ** 3
    assert rec[6] == (PolyQ.const(-120) + 33 * LAM - 3 * LAM * LAM) * A \
        + 42 * LAM * A ** 3


def test_recurrence_order_bounds():
    with pytest.raises(ValueError):
        boundary_recurrence(9)
    with pytest.raises(ValueError):
        boundary_recurrence(1)
    rec8 = boundary_recurrence(8)
    assert 8 in rec8


def test_linear_recurrence_matches_bessel():
    # phi(r) = J0(j0 r) solves r u'' + u' + lam r u = 0 with lam = j0^2;
    # its boundary derivatives come straight from the J0 power series
    j0 = j0_first_zero()
    lam = j0 * j0
    a = j0 * j0_series_derivative(j0, 1)
    rec = boundary_recurrence(6, linear=True)
    point = {"a": a, "b": 0.0, "t": 0.0, "lam": lam}
    for k in range(2, 7):
        expected = j0 ** k * j0_series_derivative(j0, k)
        got = rec[k].evaluate_float(point)
        assert got == pytest.approx(expected, rel=1e-9)


def test_recurrence_evaluates_like_boundary_derivatives():
    prob = mb.make_problem()
    lam, sol = mb.lambda_of_alpha(prob, 1.5)
    bd = mb.boundary_derivatives(sol, order=4)
    rec = boundary_recurrence(4)
    point = {"a": sol.du_at_boundary, "b": 0.0, "t": 0.0, "lam": lam}
    for k in range(2, 5):
        assert rec[k].evaluate_float(point) == pytest.approx(
            bd.values[k], rel=1e-6)


# --------------------------------------------------------- pair relations

def test_pair_relations_report():
    rep = mb.verify_pair_relations()
    assert rep.low_orders_vanish
    assert rep.equal_slopes_vanish
    assert rep.matches_lambda_scaled
    assert rep.diff5_factor_computed == "-6*lam"
    assert rep.diff6_factor_computed == "42*lam"
    assert rep.diff5_factor_printed == "-6"
    assert rep.diff6_factor_printed == "42"


def test_pair_relation_k2_by_hand():
    # u'' - t v'' = -a + t b = 0 under a = t b
    d = (-A) - T * (-B)
    assert d.subs("a", T * B) == PolyQ()


# ------------------------------------------------------------ certificate

def test_certificate_exact_coefficients():
    cert = mb.contradiction_certificate()
    assert cert.eps4_match
    assert cert.lhs_ratio == "6/5"
    assert cert.rhs_ratio == "2"
    assert cert.mismatch
    assert cert.exact_matches_lhs
    assert cert.verdict == "contradiction unless a^2=b^2"


def test_certificate_arithmetic_of_printed_fractions():
    # 1/2 + 84/120 = 6/5
    assert Fraction(1, 2) + Fraction(84, 120) == Fraction(6, 5)


def test_certificate_json_fixed_fields():
    d = mb.contradiction_certificate().to_dict()
    for key in ("lhs_eps5", "rhs_eps5", "common_factor", "verdict"):
        assert key in d


def test_certificate_runtime_under_one_second():
    t0 = time.perf_counter()
    mb.contradiction_certificate()
    assert time.perf_counter() - t0 < 1.0


def test_mismatch_vanishes_iff_equal_slopes():
    cert = mb.contradiction_certificate()
    # mismatch polynomial is -(4/5) lam t^2 b^2 (t^2 b^2 - b^2): zero
    # exactly when (tb)^2 = b^2, i.e. a^2 = b^2
    expected = PolyQ.const(Fraction(-4, 5)) * LAM * (T * B) ** 2 \
        * ((T * B) ** 2 - B * B)
    assert str(expected) == cert.mismatch_poly


# ------------------------------------------------- exact arithmetic props

_coef = st.integers(min_value=-4, max_value=4).map(Fraction)
_exp = st.tuples(*(st.integers(min_value=0, max_value=2) for _ in range(4)))


@st.composite
def polys(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    terms = {}
    for _ in range(n):
        terms[draw(_exp)] = draw(_coef)
    return PolyQ(terms)


@st.composite
def series(draw, order=4):
    return SeriesPoly([draw(polys()) for _ in range(order + 1)], order)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_poly_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@given(series(), series(), series())
@settings(max_examples=40, deadline=None)
def test_series_multiplication_associates(s1, s2, s3):
    left = (s1 * s2) * s3
    right = s1 * (s2 * s3)
    assert all(x == y for x, y in zip(left.coeffs, right.coeffs))


@given(series(order=3), series(order=3))
@settings(max_examples=40, deadline=None)
def test_truncation_commutes_with_multiplication(s1, s2):
    # product at a higher working order, then truncated, equals the product
    # at the target order
    n = s1.order
    wide1 = SeriesPoly(s1.coeffs, 2 * n)
    wide2 = SeriesPoly(s2.coeffs, 2 * n)
    wide = wide1 * wide2
    narrow = s1 * s2
    assert all(wide.coeff(k) == narrow.coeff(k) for k in range(n + 1))


@given(series(order=3), series(order=3))
@settings(max_examples=40, deadline=None)
def test_substitution_commutes_with_series_ops(s1, s2):
    tb = T * B
    before = (s1 * s2).map_coeffs(lambda p: p.subs("a", tb))
    after = s1.map_coeffs(lambda p: p.subs("a", tb)) \
        * s2.map_coeffs(lambda p: p.subs("a", tb))
    assert all(x == y for x, y in zip(before.coeffs, after.coeffs))


@given(polys())
@settings(max_examples=60, deadline=None)
def test_float_evaluation_matches_exact(p):
    point = {"a": Fraction(1, 3), "b": Fraction(2), "t": Fraction(1, 2),
             "lam": Fraction(5, 7)}
    exact = float(p.evaluate(point))
    approx = p.evaluate_float({k: float(v) for k, v in point.items()})
    assert approx == pytest.approx(exact, rel=1e-12, abs=1e-12)


def test_exp_series_requires_zero_constant():
    s = SeriesPoly([PolyQ.const(1), A], 3)
    with pytest.raises(ValueError):
        exp_minus_one(s)


def test_exp_series_known_expansion():
    # exp(eps) - 1 = eps + eps^2/2 + eps^3/6
    eps = SeriesPoly.monomial(1, 1, 3)
    e = exp_minus_one(eps)
    assert e.coeff(0) == PolyQ()
    assert e.coeff(1) == PolyQ.const(1)
    assert e.coeff(2) == PolyQ.const(Fraction(1, 2))
    assert e.coeff(3) == PolyQ.const(Fraction(1, 6))
