import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from conftest import rf
from wzproof import oracle
from wzproof.errors import NotWZPair
from wzproof.hyperterm import constant_term, eval_point
from wzproof.ratfunc import RationalFunction
from wzproof.wz import (
    WZPair,
    build_proof_trace,
    chaundy_bullard,
    chaundy_bullard_summands,
    check_boundary,
    initial_row_sum,
    make_pair,
    partial_sum_closed_form,
    telescope_check,
    telescope_check_numeric,
    verify_pair,
    verify_pair_numeric,
)

TRACE_KEYS = {"schema_version", "m", "n", "pair", "wz_residual", "boundary", "initial_row",
              "telescope", "partial_sum", "final_identity", "valid"}


def test_cb_pair_residual_zero(pair):
    assert verify_pair(pair.f, pair.r).is_zero()


def test_zero_certificate_residual(F):
    assert verify_pair(F, RationalFunction(0)) == rf("(k - (n+k+1)*x)/(n+1)")


def test_constant_pair():
    assert verify_pair(constant_term(), RationalFunction(0)).is_zero()


def test_make_pair_rejects(F):
    with pytest.raises(NotWZPair):
        make_pair(F, rf("-k/(n+2)"))


def test_numeric(pair, F):
    assert verify_pair_numeric(pair.f, pair.r, samples=100, seed=3).passed
    bad = verify_pair_numeric(F, rf("-k/(n+2)"), samples=100, seed=11)
    assert not bad.passed and bad.witness["value"] != 0
    assert verify_pair_numeric(constant_term(), RationalFunction(0), samples=20).passed


def test_numeric_is_reproducible(F):
    a = verify_pair_numeric(F, rf("-k/(n+2)"), seed=5)
    b = verify_pair_numeric(F, rf("-k/(n+2)"), seed=5)
    assert a == b


def test_boundary(F):
    assert check_boundary(WZPair(F, rf("-k/(n+1)")))
    assert not check_boundary(WZPair(F, rf("-(k+1)/(n+1)")))
    assert check_boundary(WZPair(F, RationalFunction(0)))


@pytest.mark.parametrize("m", [0, 3, 5])
def test_initial_row(F, m):
    got = initial_row_sum(F, m)
    assert got == RationalFunction(1) - rf("x") ** (m + 1)
    # geometric-series oracle: sum of x^k (1 - x)
    dense = [Fraction(0)]
    for k in range(m + 1):
        dense = oracle.add(dense, oracle.mul(oracle.x_power(k), [Fraction(1), Fraction(-1)]))
    assert oracle.to_dense(got.num) == oracle.trim(dense)


def test_telescope_examples(pair):
    t = telescope_check(pair, 0, 2)
    assert t.holds and t.lhs == rf("(1-x)^3")
    for m in range(4):
        t = telescope_check(pair, m, 0)
        assert t.holds and t.lhs == RationalFunction(1) - rf("x") ** (m + 1)
    t = telescope_check(pair, 2, 3)
    assert t.holds and t.lhs.num.degree() == 6


def test_telescope_numeric(pair):
    for m, n in [(0, 0), (2, 3), (4, 1)]:
        t = telescope_check_numeric(pair, m, n, Fraction(3, 7))
        assert t.holds
        exact = telescope_check(pair, m, n)
        assert t.lhs == exact.lhs.evaluate({"x": Fraction(3, 7)})


def test_telescope_detects_bad_certificate(F):
    # without a genuine certificate the two sides differ
    assert not telescope_check(WZPair(F, rf("-k/(n+2)")), 2, 2).holds


def test_partial_sum_examples(pair):
    for n in range(4):
        p = partial_sum_closed_form(pair, 0, n)
        assert p.holds and p.sum == rf("1-x") ** (n + 1)
    p = partial_sum_closed_form(pair, 0, 0)
    assert p.sum == p.closed == rf("1-x")
    p = partial_sum_closed_form(pair, 2, 2)
    assert p.holds and p.sum.num.degree() == 5


def test_partial_sum_matches_oracle(pair):
    for m in range(5):
        for n in range(5):
            p = partial_sum_closed_form(pair, m, n)
            want = [Fraction(0)]
            for k in range(m + 1):
                want = oracle.add(want, oracle.cb_term(n, k))
            assert oracle.to_dense(p.sum.num) == oracle.trim(want)


def test_chaundy_bullard_examples():
    assert chaundy_bullard(0, 0) == 1
    first, second = chaundy_bullard_summands(1, 1)
    half = {"x": Fraction(1, 2)}
    assert first.evaluate(half) == Fraction(1, 2) == second.evaluate(half)
    assert chaundy_bullard(3, 5).is_one()


def test_chaundy_bullard_agrees_with_oracle():
    for m in range(6):
        for n in range(6):
            a, b = chaundy_bullard_summands(m, n)
            oa, ob = oracle.chaundy_bullard_summands(m, n)
            assert oracle.to_dense(a) == oa and oracle.to_dense(b) == ob
            assert oracle.chaundy_bullard(m, n) == [Fraction(1)]


def test_negative_indices_rejected(pair):
    with pytest.raises(ValueError):
        telescope_check(pair, -1, 0)
    with pytest.raises(ValueError):
        build_proof_trace(0, -3)


@pytest.mark.parametrize("m,n", [(0, 0), (2, 1), (10, 10)])
def test_proof_trace_valid(m, n):
    trace = build_proof_trace(m, n)
    assert trace.valid, trace.failures
    doc = trace.to_dict()
    assert set(doc) == TRACE_KEYS
    assert doc["final_identity"] == "1" and doc["wz_residual"] == "0"
    assert doc["boundary"] is True and doc["valid"] is True
    assert doc["pair"] == {"term_src": "binom(n+k,k) * x^k * (1-x)^(n+1)", "cert_src": "-k/(n+1)"}


def test_proof_trace_json_round_trip():
    text = build_proof_trace(3, 4).to_json()
    doc = json.loads(text)
    assert json.dumps(doc, indent=2, ensure_ascii=False) == text
    assert doc["initial_row"] == {"got": "-x^4 + 1", "expected": "-x^4 + 1"}
    assert build_proof_trace(3, 4).to_json() == text


def test_proof_trace_records_all_failures(F):
    trace = build_proof_trace(2, 2, WZPair(F, rf("-(k+1)/(n+1)")))
    steps = [step for step, _ in trace.failures]
    assert not trace.valid
    assert "wz_residual" in steps and "boundary" in steps
    # the identity itself does not depend on the pair
    assert trace.final_identity.is_one()


def test_thread_safety(pair):
    cells = [(m, n) for m in range(6) for n in range(6)]
    serial = [telescope_check(pair, m, n) for m, n in cells]
    with ThreadPoolExecutor(max_workers=6) as pool:
        threaded = list(pool.map(lambda c: telescope_check(pair, *c), cells))
    assert threaded == serial
    with ThreadPoolExecutor(max_workers=4) as pool:
        traces = list(pool.map(lambda c: build_proof_trace(*c).to_json(), cells[:8]))
    assert traces == [build_proof_trace(*c).to_json() for c in cells[:8]]


def test_g_matches_definition(pair):
    for j in range(4):
        for k in range(4):
            g = pair.r.substitute({"n": j, "k": k}) * eval_point(pair.f, (j, k))
            assert g == rf(f"-{k}/({j}+1)") * eval_point(pair.f, (j, k))
