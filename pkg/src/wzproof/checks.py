"""Randomized property suites and exhaustive grids.

Every suite returns a :class:`SuiteResult`; the ``selftest`` command and the
acceptance tests both drive these.  Randomized suites take an explicit seed
so every run is reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .discovery import default_ansatz, discover
from .dsl import parse_cert
from .errors import PoleHit, WZError
from .hyperterm import LatticePoint, eval_numeric, eval_point
from .linsolve import linsolve
from .poly import MultiPoly, poly_gcd
from .ratfunc import RationalFunction, render_rf, rf_normalize, substitute
from .wz import (
    chaundy_bullard,
    chaundy_bullard_summands,
    g_value,
    initial_row_sum,
    cb_pair,
    partial_sum_closed_form,
    telescope_check,
    verify_pair,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    seed: int | None = None

    @property
    def passed(self):
        return self.cases - len(self.failures)

    @property
    def ok(self):
        return not self.failures and self.cases > 0

    def record(self, ok, detail):
        self.cases += 1
        if not ok:
            self.failures.append(detail)


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- random generators -----------------------------------------------------------

def random_rational(rng, size=9):
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_poly(rng, max_terms=4, max_exp=2, allow_zero=True):
    while True:
        terms = {}
        for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
            mono = tuple(rng.randint(0, max_exp) for _ in range(3))
            terms[mono] = random_rational(rng)
        p = MultiPoly(terms)
        if allow_zero or not p.is_zero():
            return p


def random_rf(rng, nonzero=False):
    num = random_poly(rng, 3, 2, allow_zero=not nonzero)
    den = random_poly(rng, 3, 1, allow_zero=False)
    return RationalFunction(num, den)


def random_point(rng):
    return {v: random_rational(rng, 12) for v in ("x", "n", "k")}


# -- kernel suites -----------------------------------------------------------------

@_timed
def ring_axioms(cases=1000, seed=0):
    res = SuiteResult("ring axioms (MultiPoly)", seed=seed)
    rng = random.Random(seed)
    zero, one = MultiPoly.constant(0), MultiPoly.constant(1)
    for _ in range(cases):
        a, b, c = (random_poly(rng) for _ in range(3))
        ok = (
            (a + b) + c == a + (b + c)
            and a + b == b + a
            and (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and a + zero == a
            and a * one == a
            and (a * zero).is_zero()
            and (a - a).is_zero()
        )
        res.record(ok, (str(a), str(b), str(c)))
    return res


@_timed
def field_axioms(cases=1000, seed=0):
    res = SuiteResult("field axioms (RationalFunction)", seed=seed)
    rng = random.Random(seed)
    for _ in range(cases):
        a, b, c = (random_rf(rng, nonzero=True) for _ in range(3))
        ok = (
            (a + b) + c == a + (b + c)
            and a + b == b + a
            and (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and (a - a).is_zero()
            and a * a.inverse() == 1
            and (a / b) * b == a
        )
        res.record(ok, (str(a), str(b), str(c)))
    return res


@_timed
def gcd_divides(cases=1000, seed=0):
    res = SuiteResult("gcd divides both arguments", seed=seed)
    rng = random.Random(seed)
    for _ in range(cases):
        common = random_poly(rng, 3, 2, allow_zero=False)
        a = random_poly(rng, 3, 1, allow_zero=False) * common
        b = random_poly(rng, 3, 1, allow_zero=False) * common
        g = poly_gcd(a, b)
        ok = (
            g.divides(a)
            and g.divides(b)
            and common.divides(g)
            and g.leading_coefficient() == 1
        )
        res.record(ok, (str(a), str(b), str(g)))
    return res


@_timed
def normalization_uniqueness(cases=1000, seed=0):
    res = SuiteResult("normalization uniqueness", seed=seed)
    rng = random.Random(seed)
    for _ in range(cases):
        a = random_poly(rng, 3, 2)
        b = random_poly(rng, 3, 1, allow_zero=False)
        c = random_poly(rng, 2, 1, allow_zero=False)
        r = rf_normalize(a, b)
        ok = (
            rf_normalize(a * b, b) == rf_normalize(a, 1)
            and rf_normalize(a * c, b * c) == r
            and r.den.leading_coefficient() == 1
            and (r.is_zero() and r.den.is_one() or poly_gcd(r.num, r.den).is_one())
        )
        res.record(ok, (str(a), str(b), str(c)))
    return res


def random_affine(rng):
    p = MultiPoly.constant(random_rational(rng))
    for v in ("x", "n", "k"):
        if rng.random() < 0.5:
            p = p + MultiPoly.var(v).scale(random_rational(rng))
    return p


def _random_bindings(rng):
    """Constants, affine forms and ratios of affine forms (shifts, x -> 1 - x, ...)."""
    bindings = {}
    for v in rng.sample(("x", "n", "k"), rng.randint(1, 3)):
        kind = rng.random()
        if kind < 0.4:
            bindings[v] = random_rational(rng)
        elif kind < 0.8:
            bindings[v] = RationalFunction(random_affine(rng))
        else:
            den = random_affine(rng)
            while den.is_zero():
                den = random_affine(rng)
            bindings[v] = RationalFunction(random_affine(rng), den)
    return bindings


@_timed
def substitution_homomorphism(cases=1000, seed=0, max_redraws=10000):
    res = SuiteResult("substitution homomorphism", seed=seed)
    rng = random.Random(seed)
    redraws = 0
    while res.cases < cases:
        a, b = random_rf(rng), random_rf(rng)
        bindings = _random_bindings(rng)
        try:
            sa, sb = substitute(a, bindings), substitute(b, bindings)
            s_sum = substitute(a + b, bindings)
            s_prod = substitute(a * b, bindings)
        except PoleHit:
            redraws += 1
            if redraws > max_redraws:
                raise
            continue
        ok = s_sum == sa + sb and s_prod == sa * sb
        res.record(ok, (str(a), str(b), {k: str(v) for k, v in bindings.items()}))
    return res


@_timed
def evaluation_consistency(cases=1000, seed=0):
    res = SuiteResult("evaluation commutes with arithmetic", seed=seed)
    rng = random.Random(seed)
    while res.cases < cases:
        a, b = random_rf(rng, nonzero=True), random_rf(rng, nonzero=True)
        point = random_point(rng)
        try:
            va, vb = a.evaluate(point), b.evaluate(point)
            got = [(a + b).evaluate(point), (a - b).evaluate(point), (a * b).evaluate(point)]
            want = [va + vb, va - vb, va * vb]
            if vb:
                got.append((a / b).evaluate(point))
                want.append(va / vb)
        except PoleHit:
            continue
        res.record(got == want, (str(a), str(b), point))
    return res


@_timed
def linsolve_backsubstitution(cases=1000, seed=0):
    res = SuiteResult("linsolve solutions satisfy the system", seed=seed)
    rng = random.Random(seed)
    for _ in range(cases):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        matrix = [[random_rational(rng) if rng.random() < 0.7 else Fraction(0)
                   for _ in range(cols)] for _ in range(rows)]
        if rng.random() < 0.8:
            hidden = [random_rational(rng) for _ in range(cols)]
            rhs = [sum((a * x for a, x in zip(row, hidden)), Fraction(0)) for row in matrix]
            consistent = True
        else:
            rhs = [random_rational(rng) for _ in range(rows)]
            consistent = None
        sol = linsolve(matrix, rhs)
        if sol is None:
            ok = consistent is None
        else:
            ok = all(sum((a * x for a, x in zip(row, sol)), Fraction(0)) == b
                     for row, b in zip(matrix, rhs))
        res.record(ok, (matrix, rhs))
    return res


@_timed
def cert_round_trip(cases=1000, seed=0):
    res = SuiteResult("certificate text round trip", seed=seed)
    rng = random.Random(seed)
    for _ in range(cases):
        r = random_rf(rng)
        text = render_rf(r)
        res.record(parse_cert(text) == r, text)
    return res


KERNEL_SUITES = (
    ring_axioms,
    field_axioms,
    gcd_divides,
    normalization_uniqueness,
    substitution_homomorphism,
    evaluation_consistency,
    linsolve_backsubstitution,
    cert_round_trip,
)


# -- term and identity grids --------------------------------------------------------

@_timed
def path_independence(max_nk=8, pair=None):
    res = SuiteResult("path independence")
    f = (pair or cb_pair()).f
    for n in range(max_nk + 1):
        for k in range(max_nk + 1):
            res.record(eval_point(f, (n, k)) == eval_point(f, (n, k), path="kn"), (n, k))
    return res


@_timed
def oracle_equivalence(max_nk=12, pair=None):
    """eval_point of the Chaundy-Bullard term against factorials and dense expansion."""
    res = SuiteResult("eval_point vs factorial oracle")
    f = (pair or cb_pair()).f
    for n in range(max_nk + 1):
        for k in range(max_nk + 1):
            got = eval_point(f, LatticePoint(n, k))
            ok = got.den.is_one() and oracle.to_dense(got.num) == oracle.cb_term(n, k)
            res.record(ok, (n, k, str(got)))
    return res


def _telescope_cells(cells):
    pair = cb_pair()
    out = []
    for m, n in cells:
        try:
            t = telescope_check(pair, m, n)
            out.append(((m, n), t.holds, "" if t.holds else f"{t.lhs} != {t.rhs}"))
        except WZError as exc:
            out.append(((m, n), False, str(exc)))
    return out


def _partial_sum_cells(cells):
    pair = cb_pair()
    out = []
    for m, n in cells:
        p = partial_sum_closed_form(pair, m, n)
        out.append(((m, n), p.holds, "" if p.holds else f"{p.sum} != {p.closed}"))
    return out


def _identity_cells(cells):
    out = []
    for m, n in cells:
        value = chaundy_bullard(m, n)
        out.append(((m, n), value.is_one(), str(value)))
    return out


def _symmetry_cells(cells):
    one_minus_x = RationalFunction(1 - MultiPoly.var("x"))
    out = []
    for m, n in cells:
        first, second = chaundy_bullard_summands(m, n)
        first_swapped, second_swapped = chaundy_bullard_summands(n, m)
        mirrored = substitute(RationalFunction(second_swapped), {"x": one_minus_x})
        ok = (mirrored == RationalFunction(first)
              and (first + second).is_one() and (first_swapped + second_swapped).is_one())
        out.append(((m, n), ok, ""))
    return out


_GRID_WORKERS = {
    "telescope": ("telescoping proposition", _telescope_cells),
    "partial_sum": ("partial-sum closed form", _partial_sum_cells),
    "identity": ("Chaundy-Bullard identity", _identity_cells),
    "symmetry": ("identity symmetry under x -> 1-x", _symmetry_cells),
}


def grid(kind, max_mn, executor=None):
    """Run one (m, n) grid over 0 <= m, n <= max_mn, optionally on an executor."""
    title, worker = _GRID_WORKERS[kind]
    start = time.perf_counter()
    res = SuiteResult(f"{title} (m, n <= {max_mn})")
    rows = [[(m, n) for n in range(max_mn + 1)] for m in range(max_mn + 1)]
    if executor is None:
        results = map(worker, rows)
    else:
        # largest rows first so the pool stays balanced
        results = executor.map(worker, list(reversed(rows)))
    for row in results:
        for cell, ok, detail in row:
            res.record(ok, (cell, detail))
    res.seconds = time.perf_counter() - start
    return res


@_timed
def raw_wz_equation(max_nk=10, x_val=Fraction(2, 7), pair=None):
    """F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) at a fixed rational x, undivided."""
    res = SuiteResult(f"raw WZ equation at x = {x_val}")
    pair = pair or cb_pair()
    f, r = pair.f, pair.r

    def F(n, k):
        return eval_numeric(f, (n, k), x_val)

    def G(n, k):
        return r.evaluate({"n": n, "k": k, "x": x_val}) * F(n, k)

    for n in range(max_nk + 1):
        for k in range(max_nk + 1):
            lhs = F(n + 1, k) - F(n, k)
            rhs = G(n, k + 1) - G(n, k)
            res.record(lhs == rhs, (n, k, lhs, rhs))
    return res


@_timed
def initial_row(max_m=30, pair=None):
    res = SuiteResult(f"initial row sum = 1 - x^(m+1) (m <= {max_m})")
    f = (pair or cb_pair()).f
    for m in range(max_m + 1):
        got = initial_row_sum(f, m)
        res.record(got == RationalFunction(1 - MultiPoly.var("x", m + 1)), (m, str(got)))
    return res


@_timed
def pair_checks():
    """The Chaundy-Bullard pair: zero residual, vanishing boundary, rediscovered certificate."""
    res = SuiteResult("WZ pair, boundary and certificate discovery")
    pair = cb_pair()
    res.record(verify_pair(pair.f, pair.r).is_zero(), "residual")
    res.record(substitute(pair.r, {"k": 0}).is_zero(), "boundary")
    res.record(all(g_value(pair, j, 0).is_zero() for j in range(13)), "G(j,0) = 0")
    found = discover(pair.f, default_ansatz(pair.f, 2, 0))
    res.record(found == parse_cert("-k/(n+1)"), f"discovered {found}")
    return res
