"""Acceptance criteria, one test each, all exact.

Each test records a one-line verdict; the lines are printed in the pytest
terminal summary (see conftest.py) and when this file is run directly.
"""

import time

import pytest

from wzproof import checks
from wzproof.discovery import default_ansatz, discover
from wzproof.dsl import parse_cert
from wzproof.wz import (
    check_boundary,
    cb_pair,
    verify_pair,
)

SEED = 20261016
KERNEL_CASES = 1000

RESULTS = {}


def report(name, ok, detail):
    RESULTS[name] = (ok, detail)
    assert ok, f"{name}: {detail}"


def test_wz_pair_verification():
    pair = cb_pair()
    start = time.perf_counter()
    residual = verify_pair(pair.f, pair.r)
    elapsed = time.perf_counter() - start
    report("WZ pair verification", residual.is_zero() and elapsed < 1.0,
           f"residual {residual}, {elapsed:.4f}s (limit 1s)")


def test_boundary_vanishes():
    pair = cb_pair()
    report("Boundary: G(j,0) = 0", check_boundary(pair),
           f"r(n,0) = {pair.r.substitute({'k': 0})}")


def test_initial_row_sums():
    res = checks.initial_row(30)
    report("Initial row = 1 - x^(m+1), m <= 30", res.ok,
           f"{res.passed}/{res.cases} rows exact")


def test_telescoping_grid():
    res = checks.grid("telescope", 12)
    report("Telescoping, 0 <= m, n <= 12", res.ok and res.seconds < 60,
           f"{res.passed}/{res.cases} cells, {res.seconds:.1f}s (limit 60s)")


def test_partial_sum_grid():
    res = checks.grid("partial_sum", 12)
    report("Partial-sum closed form, 0 <= m, n <= 12", res.ok,
           f"{res.passed}/{res.cases} cells")


def test_chaundy_bullard_grid():
    res = checks.grid("identity", 40)
    report("Chaundy-Bullard identity, 0 <= m, n <= 40", res.ok and res.seconds < 120,
           f"{res.passed}/{res.cases} cells, {res.seconds:.1f}s (limit 120s)")


def test_certificate_rediscovery():
    pair = cb_pair()
    found = discover(pair.f, default_ansatz(pair.f, 2, 0))
    ok = found == parse_cert("-k/(n+1)") and verify_pair(pair.f, found).is_zero()
    report("Certificate rediscovery (d = 2, s = 0)", ok, f"found {found}")


def test_oracle_equivalence():
    res = checks.oracle_equivalence(12)
    report("eval_point vs factorial oracle, 0 <= n, k <= 12", res.ok,
           f"{res.passed}/{res.cases} points")


KERNEL = [
    checks.ring_axioms,
    checks.field_axioms,
    checks.gcd_divides,
    checks.normalization_uniqueness,
    checks.substitution_homomorphism,
]


@pytest.mark.parametrize("suite", KERNEL, ids=lambda s: s.__name__)
def test_kernel_property_suites(suite):
    res = suite(KERNEL_CASES, SEED)
    detail = f"{res.passed}/{res.cases} cases, seed {SEED}, {res.seconds:.1f}s"
    if res.failures:
        detail += f", first failure {res.failures[0]}"
    report(f"Kernel suite: {res.name}", res.ok and res.cases >= 1000, detail)


def test_raw_wz_equation_numeric():
    res = checks.raw_wz_equation(10)
    report("Raw WZ equation at x = 2/7, 0 <= n, k <= 10", res.ok,
           f"{res.passed}/{res.cases} points")


def format_results():
    return [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, (ok, detail) in RESULTS.items()]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
