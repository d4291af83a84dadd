"""Canonical rational functions in x, n, k.

A :class:`RationalFunction` is always stored fully cancelled with a monic
denominator, so structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, PoleHit, ZeroDenominator
from .poly import ONE, ZERO, MultiPoly, poly_gcd, render_poly, var_index


class RationalFunction:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=ONE):
        num = MultiPoly.coerce(num)
        den = MultiPoly.coerce(den)
        n, d = _normalize(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _canonical(cls, num, den):
        rf = object.__new__(cls)
        object.__setattr__(rf, "num", num)
        object.__setattr__(rf, "den", den)
        object.__setattr__(rf, "_hash", None)
        return rf

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, MultiPoly):
            return cls._canonical(value, ONE)
        return cls._canonical(MultiPoly.constant(value), ONE)

    @classmethod
    def var(cls, name):
        return cls._canonical(MultiPoly.var(name), ONE)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self):
        return self.num.variables() | self.den.variables()

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        if self.den.is_one():
            return _make(self.num * other.den + other.num, other.den)
        if other.den.is_one():
            return _make(self.num + other.num * self.den, self.den)
        g = poly_gcd(self.den, other.den)
        da = self.den.exact_div(g)
        db = other.den.exact_div(g)
        return _make(self.num * db + other.num * da, da * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._canonical(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._canonical(self.num * other.num, ONE)
        # cross-cancel so the final gcd works on smaller polynomials
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = poly_gcd(a, d) if not (a.is_constant() or d.is_one()) else ONE
        g2 = poly_gcd(c, b) if not (c.is_constant() or b.is_one()) else ONE
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        den = b * d
        lc = den.leading_coefficient()
        return RationalFunction._canonical((a * c).scale(1 / lc), den.scale(1 / lc))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("exponent must be an integer")
        if e < 0:
            return self.inverse() ** (-e)
        # powers of a cancelled fraction stay cancelled
        num, den = self.num ** e, self.den ** e
        return RationalFunction._canonical(num, den)

    # -- substitution / evaluation ---------------------------------------

    def substitute(self, bindings):
        return substitute(self, bindings)

    def evaluate(self, values):
        """Exact value at a point; raises PoleHit if the denominator vanishes there."""
        d = self.den.evaluate(values)
        if not d:
            raise PoleHit(f"denominator {self.den} vanishes at {_fmt_point(values)}")
        return self.num.evaluate(values) / d

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (MultiPoly, int, Fraction)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.num, self.den)))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        return render_rf(self)


def _fmt_point(values):
    return "{" + ", ".join(f"{k}={v}" for k, v in values.items()) + "}"


def _coerce_or_none(value):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, (MultiPoly, int, Fraction)):
        return RationalFunction.coerce(value)
    return None


def _normalize(num, den):
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if den.is_constant():
        return num.scale(1 / den.constant_value()), ONE
    if not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lc = den.leading_coefficient()
    return num.scale(1 / lc), den.scale(1 / lc)


def _make(num, den):
    n, d = _normalize(num, den)
    return RationalFunction._canonical(n, d)


def rf_normalize(num, den):
    """Canonical representative of ``num / den``."""
    return _make(MultiPoly.coerce(num), MultiPoly.coerce(den))


def rf_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


RF_ZERO = RationalFunction._canonical(ZERO, ONE)
RF_ONE = RationalFunction._canonical(ONE, ONE)


def render_rf(f):
    num = render_poly(f.num)
    if f.den.is_one():
        return num
    if len(f.num) > 1:
        num = f"({num})"
    den = render_poly(f.den)
    if len(f.den) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"


# -- substitution -------------------------------------------------------------

def _subst_constants(p, values):
    out = {}
    for mono, c in p.terms.items():
        free = list(mono)
        for i, v in values.items():
            e = mono[i]
            if e:
                c = c * v ** e
                free[i] = 0
        if c:
            key = tuple(free)
            out[key] = out.get(key, 0) + c
    return MultiPoly({m: c for m, c in out.items() if c})


def _subst_poly(p, bound, degs):
    """Substitute into a polynomial, homogenised by the bound denominators.

    ``bound`` maps variable index -> RationalFunction.  Returns ``top`` with
    ``p(bound) = top / prod(den_i ** degs[i])``.
    """
    if all(v.is_constant() for v in bound.values()):
        return _subst_constants(p, {i: v.constant_value() for i, v in bound.items()})
    # successive powers, built one multiplication at a time
    num_pows = {i: [ONE] for i in bound}
    den_pows = {i: [ONE] for i in bound}

    def power(table, base, e):
        while len(table) <= e:
            table.append(table[-1] * base)
        return table[e]

    def npow(i, e):
        return power(num_pows[i], bound[i].num, e)

    def dpow(i, e):
        return power(den_pows[i], bound[i].den, e)

    top = ZERO
    for mono, c in p.terms.items():
        free = list(mono)
        term = MultiPoly.constant(c)
        for i in bound:
            e = mono[i]
            free[i] = 0
            if e:
                term = term * npow(i, e)
            if degs[i] - e:
                term = term * dpow(i, degs[i] - e)
        top = top + term.shift_monomial(tuple(free))
    return top


def _from_factors(nums, dens):
    """Canonical quotient of two factor lists, cancelling factor against factor.

    After each pair is made coprime, later divisions keep it coprime, so one
    pass leaves the products coprime without a gcd of the full products.
    """
    if any(f.is_zero() for f in dens):
        raise ZeroDenominator("rational function with zero denominator")
    if any(f.is_zero() for f in nums):
        return RF_ZERO
    scale = Fraction(1)
    for f in nums:
        if f.is_constant():
            scale *= f.constant_value()
    for f in dens:
        if f.is_constant():
            scale /= f.constant_value()
    nums = [f for f in nums if not f.is_constant()]
    dens = [f for f in dens if not f.is_constant()]
    for i in range(len(nums)):
        for j in range(len(dens)):
            g = poly_gcd(nums[i], dens[j])
            if not g.is_one():
                nums[i] = nums[i].exact_div(g)
                dens[j] = dens[j].exact_div(g)
    num = ONE
    for f in nums:
        num = num * f
    den = ONE
    for f in dens:
        den = den * f
    if den.is_constant():
        return RationalFunction._canonical(num.scale(scale / den.constant_value()), ONE)
    lc = den.leading_coefficient()
    return RationalFunction._canonical(num.scale(scale / lc), den.scale(1 / lc))


def substitute(f, bindings):
    """Compose ``f`` with ``bindings`` (a map from variable to value).

    Values may be RationalFunction, MultiPoly, int or Fraction; unbound
    variables pass through.  Raises PoleHit if the substituted denominator
    is identically zero.
    """
    f = RationalFunction.coerce(f)
    bound = {}
    for name, value in bindings.items():
        i = var_index(name)
        bound[i] = RationalFunction.coerce(value)
    # only variables that actually occur matter
    present = f.variables()
    bound = {i: v for i, v in bound.items() if i in present}
    if not bound:
        return f
    deg_num = {i: max(f.num.degree(i), 0) for i in bound}
    deg_den = {i: max(f.den.degree(i), 0) for i in bound}
    top = _subst_poly(f.num, bound, deg_num)
    bottom = _subst_poly(f.den, bound, deg_den)
    if bottom.is_zero():
        raise PoleHit(f"substitution makes the denominator {f.den} vanish identically")
    # f(bound) = top * prod q_i^(deg_den_i - deg_num_i) / bottom
    nums, dens = [top], [bottom]
    for i, v in bound.items():
        e = deg_den[i] - deg_num[i]
        if v.den.is_one() or e == 0:
            continue
        (nums if e > 0 else dens).extend([v.den] * abs(e))
    return _from_factors(nums, dens)
