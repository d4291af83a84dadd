from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import poly, rf
from wzproof.errors import DivisionByZero, PoleHit, ZeroDenominator
from wzproof.poly import MultiPoly, poly_gcd
from wzproof.ratfunc import RationalFunction, render_rf, rf_arith, rf_normalize, substitute


def test_normalize_cancels_to_cb_certificate():
    r = rf_normalize(poly("-k*(k+1)"), poly("(n+1)*(k+1)"))
    assert r.num == poly("-k") and r.den == poly("n+1")
    assert str(r) == "-k/(n + 1)"


def test_normalize_scalar():
    r = rf_normalize(poly("2*n"), MultiPoly.constant(2))
    assert r.num == poly("n") and r.den.is_one()


def test_normalize_zero_is_unique():
    r = rf_normalize(MultiPoly.constant(0), poly("n+1"))
    assert r.is_zero() and r.den.is_one()
    assert r == RationalFunction(0)


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rf_normalize(poly("n"), MultiPoly.constant(0))


def test_denominator_monic():
    r = rf_normalize(poly("k"), poly("-2*n-2"))
    assert r.den.leading_coefficient() == 1
    assert r == rf("-k/(2*n+2)")


def test_common_denominator():
    assert rf_arith(rf("k/(n+1)"), rf("1/(n+1)"), "add") == rf("(k+1)/(n+1)")


def test_divided_wz_left_side():
    rn = rf("(n+k+1)*(1-x)/(n+1)")
    assert rf_arith(rn, RationalFunction(1), "sub") == rf("(k-(n+k+1)*x)/(n+1)")


def test_div_by_zero():
    with pytest.raises(DivisionByZero):
        rf_arith(rf("n"), RationalFunction(0), "div")


def test_self_subtraction():
    a = rf("(x*n - 3)/(k^2 + n)")
    assert rf_arith(a, a, "sub").is_zero()


def test_substitute_shift():
    assert substitute(rf("-k/(n+1)"), {"k": rf("k+1")}) == rf("-(k+1)/(n+1)")


def test_substitute_boundary():
    assert substitute(rf("-k/(n+1)"), {"k": 0}).is_zero()


def test_substitute_point():
    # (2+1+1)/(1+1) * 1/3 = 2/3
    value = substitute(rf("(n+k+1)*x/(k+1)"), {"n": 2, "k": 1, "x": Fraction(1, 3)})
    assert value == Fraction(2, 3)


def test_substitute_identically_vanishing_denominator():
    with pytest.raises(PoleHit):
        substitute(rf("1/(n-k)"), {"n": rf("k")})


def test_substitute_rational_into_rational():
    got = substitute(rf("(n+1)/(k-n)"), {"n": rf("1/(k+1)")})
    assert got == rf("(k+2)/(k^2+k-1)")


def test_evaluate_pole():
    with pytest.raises(PoleHit):
        rf("1/(n-2)").evaluate({"n": 2})


def test_negative_power():
    assert rf("n/(k+1)") ** -2 == rf("(k+1)^2/n^2")


def test_render_forms():
    assert render_rf(rf("(n+k+1)/(k+1)")) == "(n + k + 1)/(k + 1)"
    # constant numerator factors stay in front; the text still parses back
    assert render_rf(rf("1/(2*n)")) == "1/2/n"
    assert render_rf(rf("-k/(n*k+1)")) == "-k/(n*k + 1)"


def test_render_round_trip_samples():
    for text in ["-k/(n+1)", "(x^2 - 1/3)/(n*k)", "3/4", "x/(n^2 + k + 2)", "0"]:
        r = rf(text)
        assert rf(render_rf(r)) == r


def test_immutable():
    r = rf("n")
    with pytest.raises(AttributeError):
        r.num = poly("k")


small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
monos = st.tuples(*(st.integers(0, 2) for _ in range(3)))
polys = st.dictionaries(monos, small, max_size=3).map(MultiPoly)
nonzero = polys.filter(lambda p: not p.is_zero())
rfs = st.builds(RationalFunction, polys, nonzero)


@settings(max_examples=40, deadline=None)
@given(rfs, rfs)
def test_canonical_form_is_reduced(a, b):
    for r in (a + b, a * b):
        assert r.den.leading_coefficient() == 1
        if not r.is_zero():
            assert poly_gcd(r.num, r.den).is_one()


@settings(max_examples=40, deadline=None)
@given(rfs, nonzero)
def test_scaling_both_parts_is_invisible(a, c):
    assert RationalFunction(a.num * c, a.den * c) == a
