import pytest

from conftest import poly, rf
from wzproof.discovery import (
    Ansatz,
    default_ansatz,
    discover,
    nk_monomials,
    radical,
    residual_system,
    x_free_part,
)
from wzproof.dsl import term_from_source
from wzproof.errors import NoCertificate
from wzproof.hyperterm import constant_term
from wzproof.linsolve import linsolve
from wzproof.wz import verify_pair


def test_default_ansatz_cb_term(F):
    a = default_ansatz(F, 2, 0)
    assert a.denominator == poly("(n+1)*(k+1)")
    assert set(a.monomials) == {(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)}
    assert a.degree_bound == 2


def test_default_ansatz_constant_term():
    for d in range(3):
        assert default_ansatz(constant_term(), d).denominator == 1


def test_default_ansatz_degree_zero(F):
    a = default_ansatz(F, 0, 0)
    assert a.denominator == poly("(n+1)*(k+1)") and a.monomials == ((0, 0, 0),)


def test_span_adds_shifted_factors(F):
    a = default_ansatz(F, 2, 1)
    assert a.denominator == poly("(n+1)*(k+1)*(k+2)")


def test_ansatz_validation():
    with pytest.raises(ValueError):
        Ansatz(poly("x+n"), 0, nk_monomials(0))
    with pytest.raises(ValueError):
        Ansatz(poly("n+1"), 1, nk_monomials(0))


def test_monomials_ascending():
    assert nk_monomials(1) == ((0, 0, 0), (0, 0, 1), (0, 1, 0))


def test_radical_and_x_free_part():
    assert radical(poly("(n+1)^3*(k-2)^2*k")) == poly("(n+1)*(k-2)*k")
    assert x_free_part(poly("(n+1)*(x*k + 1)")) == poly("n+1")


def test_rediscovers_cb_certificate(F):
    r = discover(F, default_ansatz(F, 2, 0))
    assert r == rf("-k/(n+1)")
    assert verify_pair(F, r).is_zero()


def test_solution_u_is_minus_k_k_plus_1(F):
    a = default_ansatz(F, 2, 0)
    matrix, rhs, _ = residual_system(F, a)
    sol = linsolve(matrix, rhs, ncols=len(a.monomials))
    u = dict(zip(a.monomials, sol))
    assert u[(0, 0, 2)] == -1 and u[(0, 0, 1)] == -1
    assert all(v == 0 for m, v in u.items() if m not in {(0, 0, 2), (0, 0, 1)})


@pytest.mark.parametrize("d", [0, 1])
def test_too_small_ansatz(F, d):
    with pytest.raises(NoCertificate) as info:
        discover(F, default_ansatz(F, d, 0))
    assert "degree" in str(info.value)


def test_constant_term_gets_zero():
    t = constant_term()
    assert discover(t, default_ansatz(t, 1)).is_zero()


@pytest.mark.parametrize("d,s", [(2, 0), (3, 0), (2, 1), (3, 1), (2, 2)])
def test_monotone_and_deterministic(F, d, s):
    first = discover(F, default_ansatz(F, d, s))
    assert first == discover(F, default_ansatz(F, d, s))
    assert verify_pair(F, first).is_zero()
    assert discover(F, default_ansatz(F, d + 1, s)) is not None
    assert discover(F, default_ansatz(F, d, s + 1)) is not None


def test_other_term():
    t = term_from_source("binom(n,k)*(1/2)^n")
    r = discover(t, default_ansatz(t, 2))
    assert verify_pair(t, r).is_zero()
    assert r == rf("-k/(2*(n-k+1))")
