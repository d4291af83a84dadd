"""WZ pairs, the telescoping proposition, and the Chaundy-Bullard proof trace."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .dsl import parse_cert, term_from_source
from .errors import NotWZPair, PoleHit, WZError
from .hyperterm import HyperTerm, eval_column, eval_numeric, eval_point, eval_row, shift_k
from .poly import ONE, MultiPoly
from .ratfunc import RF_ONE, RF_ZERO, RationalFunction, render_rf, substitute

CB_TERM_SRC = "binom(n+k,k) * x^k * (1-x)^(n+1)"
CB_CERT_SRC = "-k/(n+1)"
TRACE_SCHEMA_VERSION = 1

_X = MultiPoly.var("x")


@dataclass(frozen=True)
class WZPair:
    """A term F with certificate r, so that G(n,k) = r(n,k) F(n,k)."""

    f: HyperTerm
    r: RationalFunction
    cert_src: str | None = field(default=None, compare=False)

    @property
    def term_src(self):
        return self.f.src if self.f.src is not None else str(self.f)

    @property
    def certificate_src(self):
        return self.cert_src if self.cert_src is not None else render_rf(self.r)


def make_pair(f, r, cert_src=None):
    """Validated WZPair; raises NotWZPair when the residual is nonzero."""
    r = RationalFunction.coerce(r)
    residual = verify_pair(f, r)
    if not residual.is_zero():
        raise NotWZPair(f"not a WZ pair: residual {residual}")
    return WZPair(f, r, cert_src)


def pair_from_source(term_src, cert_src):
    return make_pair(term_from_source(term_src), parse_cert(cert_src), cert_src)


def cb_pair():
    """F(n,k) = C(n+k,k) x^k (1-x)^(n+1) with certificate -k/(n+1)."""
    return pair_from_source(CB_TERM_SRC, CB_CERT_SRC)


# -- the WZ equation ------------------------------------------------------------

def verify_pair(f, r):
    """Residual of F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k) after dividing by F.

    That is ``(rn - 1) - (r(n,k+1) rk - r(n,k))``; zero exactly for a WZ pair.
    """
    r = RationalFunction.coerce(r)
    return (f.rn - RF_ONE) - (shift_k(r) * f.rk - r)


@dataclass(frozen=True)
class NumericCheck:
    passed: bool
    samples: int
    witness: dict | None = None


def _random_rational(rng):
    return Fraction(rng.randint(-60, 60), rng.randint(1, 25))


def verify_pair_numeric(f, r, samples=100, seed=0, max_redraws=1000):
    """Evaluate the divided WZ equation at random rational points.

    The pieces rn, rk, r(n,k), r(n,k+1) are evaluated separately, so this
    does not reuse the symbolic residual.  Points where any of them has a
    pole are redrawn, at most ``max_redraws`` times in total.
    """
    r = RationalFunction.coerce(r)
    rng = random.Random(seed)
    redraws = 0
    done = 0
    while done < samples:
        n, k, x = (_random_rational(rng) for _ in range(3))
        try:
            rn = f.rn.evaluate({"n": n, "k": k, "x": x})
            rk = f.rk.evaluate({"n": n, "k": k, "x": x})
            r0 = r.evaluate({"n": n, "k": k, "x": x})
            r1 = r.evaluate({"n": n, "k": k + 1, "x": x})
        except PoleHit:
            redraws += 1
            if redraws > max_redraws:
                raise WZError(f"gave up after {max_redraws} pole-hitting samples") from None
            continue
        value = (rn - 1) - (r1 * rk - r0)
        done += 1
        if value:
            return NumericCheck(False, done, {"n": n, "k": k, "x": x, "value": value})
    return NumericCheck(True, done)


def check_boundary(pair):
    """G(j, 0) = 0 for every j, i.e. r(n, 0) is the zero function."""
    return substitute(pair.r, {"k": 0}).is_zero()


def initial_row_sum(f, m):
    """Sum of F(0, k) for k = 0..m."""
    total = RF_ZERO
    for value in eval_row(f, 0, m):
        total = total + value
    return total


def g_value(pair, j, k):
    return substitute(pair.r, {"n": j, "k": k}) * eval_point(pair.f, (j, k))


@dataclass(frozen=True)
class TelescopeResult:
    m: int
    n: int
    lhs: object
    rhs: object

    @property
    def holds(self):
        return self.lhs == self.rhs


def _check_indices(m, n):
    for name, v in (("m", m), ("n", n)):
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


def telescope_check(pair, m, n):
    """Both sides of the telescoping proposition at (m, n), exactly in x.

    lhs = sum_{k<=m} F(n,k);
    rhs = sum_{j<n} [G(j,m+1) - G(j,0)] + sum_{k<=m} F(0,k).
    """
    _check_indices(m, n)
    lhs = RF_ZERO
    for value in eval_row(pair.f, n, m):
        lhs = lhs + value
    rhs = initial_row_sum(pair.f, m)
    if n:
        top = eval_column(pair.f, m + 1, n - 1)
        bottom = eval_column(pair.f, 0, n - 1)
        for j in range(n):
            g_top = substitute(pair.r, {"n": j, "k": m + 1}) * top[j]
            g_bottom = substitute(pair.r, {"n": j, "k": 0}) * bottom[j]
            rhs = rhs + (g_top - g_bottom)
    return TelescopeResult(m, n, lhs, rhs)


def telescope_check_numeric(pair, m, n, x_val):
    """telescope_check with x fixed to the rational ``x_val``."""
    _check_indices(m, n)
    x_val = Fraction(x_val)
    f, r = pair.f, pair.r

    def g(j, k):
        return r.evaluate({"n": j, "k": k, "x": x_val}) * eval_numeric(f, (j, k), x_val)

    lhs = sum((eval_numeric(f, (n, k), x_val) for k in range(m + 1)), Fraction(0))
    rhs = sum((eval_numeric(f, (0, k), x_val) for k in range(m + 1)), Fraction(0))
    for j in range(n):
        rhs += g(j, m + 1) - g(j, 0)
    return TelescopeResult(m, n, lhs, rhs)


@dataclass(frozen=True)
class PartialSum:
    m: int
    n: int
    sum: RationalFunction
    closed: RationalFunction

    @property
    def holds(self):
        return self.sum == self.closed


def closed_form(m, n):
    """1 - x^(m+1) sum_{j<=n} C(m+j, j) (1-x)^j, binomials from the factorial oracle."""
    one_minus_x = ONE - _X
    acc = MultiPoly.constant(0)
    power = ONE
    for j in range(n + 1):
        acc = acc + power.scale(oracle.binomial(m + j, j))
        power = power * one_minus_x
    return ONE - acc.shift_monomial((m + 1, 0, 0))


def partial_sum_closed_form(pair, m, n):
    _check_indices(m, n)
    total = RF_ZERO
    for value in eval_row(pair.f, n, m):
        total = total + value
    return PartialSum(m, n, total, RationalFunction(closed_form(m, n)))


def chaundy_bullard_summands(m, n):
    """(1-x)^(n+1) sum_{k<=m} C(n+k,k) x^k  and  x^(m+1) sum_{k<=n} C(m+k,k) (1-x)^k."""
    _check_indices(m, n)
    one_minus_x = ONE - _X
    head = MultiPoly({(k, 0, 0): oracle.binomial(n + k, k) for k in range(m + 1)})
    first = (one_minus_x ** (n + 1)) * head
    acc = MultiPoly.constant(0)
    power = ONE
    for k in range(n + 1):
        acc = acc + power.scale(oracle.binomial(m + k, k))
        power = power * one_minus_x
    second = acc.shift_monomial((m + 1, 0, 0))
    return first, second


def chaundy_bullard(m, n):
    """Expanded left side of the Chaundy-Bullard identity; equals 1."""
    first, second = chaundy_bullard_summands(m, n)
    return first + second


# -- proof trace -------------------------------------------------------------------

@dataclass
class ProofTrace:
    m: int
    n: int
    term_src: str
    cert_src: str
    wz_residual: RationalFunction | None = None
    boundary: bool | None = None
    initial_row: tuple | None = None  # (got, expected)
    telescoping_instances: list = field(default_factory=list)  # (m, n, lhs, rhs)
    partial_sum: tuple | None = None  # (sum, closed)
    final_identity: MultiPoly | None = None
    failures: list = field(default_factory=list)  # (step, message)

    @property
    def valid(self):
        return not self.failures

    def to_dict(self):
        def text(v):
            return None if v is None else str(v)

        tele = self.telescoping_instances[0] if self.telescoping_instances else None
        return {
            "schema_version": TRACE_SCHEMA_VERSION,
            "m": self.m,
            "n": self.n,
            "pair": {"term_src": self.term_src, "cert_src": self.cert_src},
            "wz_residual": text(self.wz_residual),
            "boundary": self.boundary,
            "initial_row": {
                "got": text(self.initial_row and self.initial_row[0]),
                "expected": text(self.initial_row and self.initial_row[1]),
            },
            "telescope": {
                "lhs": text(tele and tele[2]),
                "rhs": text(tele and tele[3]),
            },
            "partial_sum": {
                "sum": text(self.partial_sum and self.partial_sum[0]),
                "closed": text(self.partial_sum and self.partial_sum[1]),
            },
            "final_identity": text(self.final_identity),
            "valid": self.valid,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)


def build_proof_trace(m, n, pair=None):
    """Replay every step of the Chaundy-Bullard proof at concrete (m, n).

    All steps run even after a failure; each failing step is recorded in
    ``trace.failures``.
    """
    _check_indices(m, n)
    pair = pair or cb_pair()
    trace = ProofTrace(m, n, pair.term_src, pair.certificate_src)

    def step(name, fn):
        try:
            fn()
        except WZError as exc:
            trace.failures.append((name, f"{type(exc).__name__}: {exc}"))

    def wz():
        trace.wz_residual = verify_pair(pair.f, pair.r)
        if not trace.wz_residual.is_zero():
            trace.failures.append(("wz_residual", f"residual {trace.wz_residual} is not 0"))

    def boundary():
        trace.boundary = check_boundary(pair)
        if not trace.boundary:
            trace.failures.append(("boundary", f"r(n,0) = {substitute(pair.r, {'k': 0})} is not 0"))

    def initial():
        got = initial_row_sum(pair.f, m)
        expected = RationalFunction(ONE - MultiPoly.var("x", m + 1))
        trace.initial_row = (got, expected)
        if got != expected:
            trace.failures.append(("initial_row", f"row sum {got} != {expected}"))

    def telescope():
        res = telescope_check(pair, m, n)
        trace.telescoping_instances.append((m, n, res.lhs, res.rhs))
        if not res.holds:
            trace.failures.append(("telescope", f"lhs {res.lhs} != rhs {res.rhs}"))

    def partial():
        res = partial_sum_closed_form(pair, m, n)
        trace.partial_sum = (res.sum, res.closed)
        if not res.holds:
            trace.failures.append(("partial_sum", f"sum {res.sum} != closed form {res.closed}"))

    def final():
        trace.final_identity = chaundy_bullard(m, n)
        if not trace.final_identity.is_one():
            trace.failures.append(("final_identity", f"expansion is {trace.final_identity}, not 1"))

    for name, fn in (("wz_residual", wz), ("boundary", boundary), ("initial_row", initial),
                     ("telescope", telescope), ("partial_sum", partial), ("final_identity", final)):
        step(name, fn)
    return trace
