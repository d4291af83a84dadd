"""Sparse polynomials in x, n, k over the rationals.

A monomial is an exponent triple ``(e_x, e_n, e_k)``.  Terms are ordered
graded-lexicographically with variable precedence n > k > x; the leading
term of a polynomial is the largest one under that order and "monic" always
refers to it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType

from .errors import BothZero, DivisionByZero

X, N, K = 0, 1, 2
VARS = ("x", "n", "k")
VAR_INDEX = {name: i for i, name in enumerate(VARS)}
# display / precedence order
_PRECEDENCE = (N, K, X)

Monomial = tuple  # (e_x, e_n, e_k)
ONE_MONO = (0, 0, 0)


def order_key(mono):
    """Sort key realising the canonical monomial order (grlex, n > k > x)."""
    return (mono[0] + mono[1] + mono[2], mono[N], mono[K], mono[X])


def var_index(var):
    if isinstance(var, int):
        if var not in (X, N, K):
            raise ValueError(f"unknown variable index {var}")
        return var
    try:
        return VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of x, n, k") from None


def _mono_mul(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, not {type(c).__name__}")


class MultiPoly:
    """Immutable sparse polynomial; the zero polynomial has no terms."""

    __slots__ = ("_terms", "_hash", "_lead")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in dict(terms).items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != 3 or min(mono) < 0:
                    raise ValueError(f"bad monomial {mono!r}")
                c = _as_fraction(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash = None
        self._lead = None

    @classmethod
    def _wrap(cls, terms):
        # trusted constructor: terms already has no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        p._lead = None
        return p

    @classmethod
    def constant(cls, c):
        c = _as_fraction(c)
        return cls._wrap({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, name, power=1):
        mono = [0, 0, 0]
        mono[var_index(name)] = power
        return cls._wrap({tuple(mono): Fraction(1)})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, MultiPoly):
            return value
        return cls.constant(value)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def is_one(self):
        return len(self._terms) == 1 and self._terms.get(ONE_MONO) == 1

    def constant_value(self):
        """Value of a constant polynomial; raises if any variable occurs."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(ONE_MONO, Fraction(0))

    def degree(self, var=None):
        """Total degree, or degree in one variable; -inf for the zero polynomial."""
        if not self._terms:
            return -math.inf
        if var is None:
            return max(sum(m) for m in self._terms)
        i = var_index(var)
        return max(m[i] for m in self._terms)

    def variables(self):
        return {i for m in self._terms for i in range(3) if m[i]}

    def sorted_terms(self, descending=True):
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=descending)

    def leading_monomial(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None:
            self._lead = max(self._terms, key=order_key)
        return self._lead

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def monic(self):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- arithmetic -------------------------------------------------------

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        return MultiPoly._wrap({m: v * c for m, v in self._terms.items()})

    def __neg__(self):
        return MultiPoly._wrap({m: -v for m, v in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.constant(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._wrap(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = MultiPoly.constant(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly._wrap(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return self.scale(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for mb, cb in b.items():
            bx, bn, bk = mb
            for ma, ca in a.items():
                m = (ma[0] + bx, ma[1] + bn, ma[2] + bk)
                out[m] = get(m, 0) + ca * cb
        return MultiPoly._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_monomial(self, mono):
        """Multiply by the monomial ``mono`` (coefficient 1)."""
        if mono == ONE_MONO:
            return self
        return MultiPoly._wrap({_mono_mul(m, mono): c for m, c in self._terms.items()})

    def exact_div(self, other):
        """Quotient ``self / other``; raises ValueError if the division leaves a remainder."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        rem = dict(self._terms)
        quot = {}
        lm_b = other.leading_monomial()
        lc_b = other.leading_coefficient()
        b_terms = list(other._terms.items())
        while rem:
            lm_r = max(rem, key=order_key)
            d = (lm_r[0] - lm_b[0], lm_r[1] - lm_b[1], lm_r[2] - lm_b[2])
            if min(d) < 0:
                raise ValueError(f"{other} does not divide {self}")
            c = rem[lm_r] / lc_b
            quot[d] = c
            for mb, cb in b_terms:
                m = (mb[0] + d[0], mb[1] + d[1], mb[2] + d[2])
                v = rem.get(m, 0) - c * cb
                if v:
                    rem[m] = v
                else:
                    rem.pop(m, None)
        return MultiPoly._wrap(quot)

    def divides(self, other):
        """True if ``self`` divides ``other`` exactly."""
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    def derivative(self, var):
        i = var_index(var)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly._wrap(out)

    def coeffs_in(self, var):
        """View as a polynomial in ``var``: map degree -> coefficient polynomial."""
        i = var_index(var)
        out = {}
        for m, c in self._terms.items():
            mm = list(m)
            e = mm[i]
            mm[i] = 0
            out.setdefault(e, {})[tuple(mm)] = c
        return {e: MultiPoly._wrap(t) for e, t in out.items()}

    def evaluate(self, values):
        """Evaluate with ``values`` mapping every occurring variable to a number."""
        vals = [None, None, None]
        for name, v in values.items():
            vals[var_index(name)] = _as_fraction(v)
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for i in range(3):
                if m[i]:
                    if vals[i] is None:
                        raise ValueError(f"no value given for {VARS[i]}")
                    t *= vals[i] ** m[i]
            total += t
        return total

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def __str__(self):
        return render_poly(self)


ZERO = MultiPoly._wrap({})
ONE = MultiPoly._wrap({ONE_MONO: Fraction(1)})


def render_monomial(mono):
    parts = []
    for i in _PRECEDENCE:
        e = mono[i]
        if e == 1:
            parts.append(VARS[i])
        elif e > 1:
            parts.append(f"{VARS[i]}^{e}")
    return "*".join(parts)


def render_poly(p):
    """Canonical text: terms by descending canonical order, ``^`` powers, explicit ``*``."""
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.sorted_terms():
        body = render_monomial(mono)
        if not body:
            text = str(c)
        elif c == 1:
            text = body
        elif c == -1:
            text = "-" + body
        else:
            text = f"{c}*{body}"
        if not pieces:
            pieces.append(text)
        elif text.startswith("-"):
            pieces.append(" - " + text[1:])
        else:
            pieces.append(" + " + text)
    return "".join(pieces)


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# -- greatest common divisor ------------------------------------------------
#
# Recursive scheme: pick the first variable (in precedence order) that occurs,
# split off the content with respect to it (a gcd one level down), and run a
# subresultant remainder sequence on the primitive parts.

def poly_gcd(a, b):
    """Monic greatest common divisor of two polynomials."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return _gcd(a, b, _PRECEDENCE).monic()


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b).exact_div(poly_gcd(a, b)).monic()


_PROBE_POINTS = ((3, 5, 7), (11, -2, 13), (-17, 19, 4))


def _univariate_image(p, v, point):
    """Dense coefficients (index = degree in v) of p with the other variables fixed."""
    out = {}
    for m, c in p._terms.items():
        t = c
        for i in range(3):
            if i != v and m[i]:
                t *= point[i] ** m[i]
        out[m[v]] = out.get(m[v], 0) + t
    return [Fraction(out.get(e, 0)) for e in range(max(out) + 1)] if out else []


def _dense_gcd_degree(a, b):
    while b:
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        lb = b[-1]
        while len(a) >= len(b):
            q = a[-1] / lb
            if q:
                shift = len(a) - len(b)
                for i, c in enumerate(b):
                    a[shift + i] -= q * c
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _certainly_coprime(a, b, shared):
    """True if specialisation proves gcd(a, b) = 1; False means "unknown".

    Fix every variable but v at an integer point.  When neither image drops
    degree in v, deg_v of the true gcd is at most the degree of the images'
    gcd, so a constant image gcd for every shared variable proves coprimality.
    """
    for v in shared:
        da, db = a.degree(v), b.degree(v)
        for point in _PROBE_POINTS:
            ia = _univariate_image(a, v, point)
            ib = _univariate_image(b, v, point)
            if len(ia) - 1 == da and len(ib) - 1 == db:
                if _dense_gcd_degree(ia, ib) == 0:
                    break
                return False
        else:
            return False
    return True


def _gcd(a, b, variables):
    if a.is_constant() or b.is_constant():
        return ONE
    if a == b:
        return a.monic()
    shared = a.variables() & b.variables()
    # a factor of the gcd can only involve variables both arguments share
    if not shared or _certainly_coprime(a, b, shared):
        return ONE
    va, vb = a.variables(), b.variables()
    vs = [v for v in variables if v in va or v in vb]
    # a variable missing from one side ends the remainder sequence at once;
    # otherwise the lowest degree keeps the sequence short
    v = min(vs, key=lambda i: (i in va and i in vb, max(a.degree(i), b.degree(i))))
    rest = tuple(i for i in vs if i != v)
    ca = _content(a, v, rest)
    cb = _content(b, v, rest)
    c = _gcd(ca, cb, rest)
    pa = a.exact_div(ca) if not ca.is_one() else a
    pb = b.exact_div(cb) if not cb.is_one() else b
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    g = _subresultant_gcd(pa, pb, v, rest)
    return (c * g).monic()


def _content(p, v, rest):
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``v``."""
    coeffs = sorted(p.coeffs_in(v).values(), key=len)
    g = coeffs[0].monic()
    for c in coeffs[1:]:
        if g.is_constant():
            return ONE
        g = _gcd(g, c, rest)
    if g.is_constant():
        return ONE
    return g


def _leading_in(p, v):
    coeffs = p.coeffs_in(v)
    return coeffs[max(coeffs)]


def _var_power(v, e):
    mono = [0, 0, 0]
    mono[v] = e
    return tuple(mono)


def _prem(a, b, v):
    """Pseudo-remainder of ``a`` by ``b`` in ``v``: lc(b)^(deg a - deg b + 1) * a mod b."""
    db = b.degree(v)
    lb = _leading_in(b, v)
    r = a
    e = a.degree(v) - db + 1
    while not r.is_zero() and r.degree(v) >= db:
        dr = r.degree(v)
        lr = _leading_in(r, v)
        r = lb * r - (lr * b).shift_monomial(_var_power(v, dr - db))
        e -= 1
    if e > 0:
        r = (lb ** e) * r
    return r


def _primitive_part(p, v, rest):
    c = _content(p, v, rest)
    return p if c.is_one() else p.exact_div(c)


def _subresultant_gcd(a, b, v, rest):
    # a, b primitive in v with deg_v a >= deg_v b >= 0
    if b.degree(v) == 0:
        return ONE
    g = ONE
    h = ONE
    while True:
        delta = a.degree(v) - b.degree(v)
        r = _prem(a, b, v)
        if r.is_zero():
            return _primitive_part(b, v, rest).monic()
        if r.degree(v) == 0:
            return ONE
        a, b = b, r.exact_div(g * h ** delta)
        g = _leading_in(a, v)
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_div(h ** (delta - 1))
