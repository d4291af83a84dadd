"""Proper hypergeometric terms T(n, k) given by T(0, 0) and two shift quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BaseNotParameterOnly,
    DegenerateTerm,
    IncompatibleShifts,
    PathPole,
    PoleHit,
    XPole,
)
from .poly import K, N, MultiPoly
from .ratfunc import RF_ONE, RationalFunction, substitute

_N_PLUS_1 = RationalFunction(MultiPoly.var("n") + 1)
_K_PLUS_1 = RationalFunction(MultiPoly.var("k") + 1)


def shift_n(f, by=1):
    if by == 1:
        return substitute(f, {"n": _N_PLUS_1})
    return substitute(f, {"n": RationalFunction(MultiPoly.var("n") + by)})


def shift_k(f, by=1):
    if by == 1:
        return substitute(f, {"k": _K_PLUS_1})
    return substitute(f, {"k": RationalFunction(MultiPoly.var("k") + by)})


@dataclass(frozen=True)
class HyperTerm:
    """T with ``base = T(0,0)``, ``rn = T(n+1,k)/T(n,k)``, ``rk = T(n,k+1)/T(n,k)``.

    Build instances through :func:`make_term`, which validates the fields.
    ``src`` optionally records the text the term was compiled from.
    """

    base: RationalFunction
    rn: RationalFunction
    rk: RationalFunction
    src: str | None = field(default=None, compare=False)

    def __str__(self):
        if self.src is not None:
            return self.src
        return f"HyperTerm(base={self.base}, rn={self.rn}, rk={self.rk})"


@dataclass(frozen=True)
class LatticePoint:
    n: int
    k: int

    def __post_init__(self):
        for name in ("n", "k"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"lattice coordinate {name} must be a nonnegative integer, got {v!r}")


def compatibility_defect(rn, rk):
    """rn(n,k+1)*rk(n,k) - rk(n+1,k)*rn(n,k); zero for a consistent pair of quotients."""
    return shift_k(rn) * rk - shift_n(rk) * rn


def make_term(base, rn, rk, src=None):
    base = RationalFunction.coerce(base)
    rn = RationalFunction.coerce(rn)
    rk = RationalFunction.coerce(rk)
    if base.variables() & {N, K}:
        raise BaseNotParameterOnly(f"base value {base} must not depend on n or k")
    if rn.is_zero() or rk.is_zero():
        raise DegenerateTerm("shift quotients must be nonzero")
    defect = compatibility_defect(rn, rk)
    if not defect.is_zero():
        raise IncompatibleShifts(
            f"rn(n,k+1)*rk(n,k) != rk(n+1,k)*rn(n,k) for rn={rn}, rk={rk}; difference {defect}"
        )
    return HyperTerm(base, rn, rk, src)


def constant_term(c=1):
    return HyperTerm(RationalFunction.coerce(c), RF_ONE, RF_ONE, str(c))


def term_mul(a, b):
    # the product of two compatible quotient pairs is compatible
    src = None
    if a.src is not None and b.src is not None:
        src = f"{a.src} * {b.src}"
    return HyperTerm(a.base * b.base, a.rn * b.rn, a.rk * b.rk, src)


def _as_point(p):
    if isinstance(p, LatticePoint):
        return p
    return LatticePoint(*p)


def _path_factor(q, n, k, label, step):
    try:
        v = substitute(q, {"n": n, "k": k})
    except PoleHit:
        raise PathPole(f"{label}({n},{k}) has a pole on the step {step}", step) from None
    if v.is_zero():
        raise PathPole(f"{label}({n},{k}) vanishes on the step {step}", step)
    return v


def _steps(p, path):
    """Lattice steps from (0,0) to p as (quotient name, n, k, step) tuples."""
    if path == "nk":
        for i in range(p.n):
            yield "rn", i, 0, ((i, 0), (i + 1, 0))
        for j in range(p.k):
            yield "rk", p.n, j, ((p.n, j), (p.n, j + 1))
    elif path == "kn":
        for j in range(p.k):
            yield "rk", 0, j, ((0, j), (0, j + 1))
        for i in range(p.n):
            yield "rn", i, p.k, ((i, p.k), (i + 1, p.k))
    else:
        raise ValueError(f"unknown evaluation path {path!r}")


def eval_point(t, p, path="nk"):
    """T(n, k) as a rational function of x.

    The default path walks (0,0) -> (n,0) -> (n,k); ``path="kn"`` walks
    (0,0) -> (0,k) -> (n,k) instead.
    """
    p = _as_point(p)
    value = t.base
    for name, n, k, step in _steps(p, path):
        q = t.rn if name == "rn" else t.rk
        value = value * _path_factor(q, n, k, name, step)
    return value


def eval_row(t, n, kmax):
    """[T(n,0), ..., T(n,kmax)] along the canonical path, sharing the walk."""
    value = eval_point(t, (n, 0))
    row = [value]
    for j in range(kmax):
        value = value * _path_factor(t.rk, n, j, "rk", ((n, j), (n, j + 1)))
        row.append(value)
    return row


def eval_column(t, k, nmax):
    """[T(0,k), ..., T(nmax,k)], walking (0,0) -> (0,k) -> (nmax,k) once.

    This is the "kn" path; for k = 0 it coincides with the canonical one.
    """
    value = eval_point(t, (0, k), path="kn")
    column = [value]
    for i in range(nmax):
        value = value * _path_factor(t.rn, i, k, "rn", ((i, k), (i + 1, k)))
        column.append(value)
    return column


def eval_numeric(t, p, x_val):
    """T(n, k) with x replaced by the exact rational ``x_val``."""
    p = _as_point(p)
    x_val = Fraction(x_val)
    point = {"x": x_val}

    def at_x(f, what):
        try:
            return f.evaluate(point)
        except PoleHit:
            raise XPole(f"{what} has a pole at x = {x_val}") from None

    value = at_x(t.base, "base value")
    for name, n, k, step in _steps(p, "nk"):
        q = t.rn if name == "rn" else t.rk
        factor = _path_factor(q, n, k, name, step)
        value *= at_x(factor, f"{name}({n},{k})")
    return value
