"""Text formats for hypergeometric terms and rational certificates.

Term grammar (whitespace-insensitive)::

    term     := factor { "*" factor }
    factor   := "-" factor
              | "binom" "(" affine "," affine ")"
              | base [ "^" exponent ]
    base     := "x" | "(" xpoly ")" | rational
    exponent := integer | "n" | "k" | "(" affine ")"
    affine   := integer-linear form in n and k
    xpoly    := polynomial in x with +, -, *, ^integer and rational literals
    rational := integer [ "/" integer ]

Certificates are rational-function expressions in n, k, x built from
``+ - * / ^``, integer literals and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivisionByZero,
    NonAffineExponent,
    ParseError,
    UnsupportedShift,
    ZeroDenominator,
)
from .hyperterm import HyperTerm, make_term, term_mul
from .poly import X, MultiPoly
from .ratfunc import RF_ONE, RationalFunction

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),])"
)
_VARIABLES = ("x", "n", "k")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", an operator character, or "end"
    text: str
    line: int
    col: int


def tokenize(src):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ws":
            for i, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "op":
                kind = text
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def error(self, message, expected=(), tok=None, cls=ParseError):
        tok = tok or self.tok
        if issubclass(cls, ParseError):
            return cls(message, tok.line, tok.col, expected)
        return cls(f"{message} at line {tok.line}, column {tok.col}")

    def expect(self, kind, what=None):
        if not self.at(kind):
            found = self.tok.text or "end of input"
            raise self.error(f"unexpected {found!r}", (what or repr(kind),))
        return self.advance()

    def expect_end(self):
        if not self.at("end"):
            raise self.error(f"unexpected {self.tok.text!r}", ("end of input",))

    # -- polynomial / rational-function expressions ---------------------

    def rf_expr(self, allowed, division=True):
        """Sum of products; returns a RationalFunction in the ``allowed`` variables."""
        value = self.rf_product(allowed, division)
        while self.at("+") or self.at("-"):
            op = self.advance().kind
            rhs = self.rf_product(allowed, division)
            value = value + rhs if op == "+" else value - rhs
        return value

    def rf_product(self, allowed, division):
        value = self.rf_unary(allowed, division)
        while self.at("*") or (self.at("/") and division):
            op_tok = self.advance()
            rhs = self.rf_unary(allowed, division)
            if op_tok.kind == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except (DivisionByZero, ZeroDenominator):
                    raise self.error("division by zero", tok=op_tok, cls=ZeroDenominator) from None
        return value

    def rf_unary(self, allowed, division):
        if self.at("-"):
            self.advance()
            return -self.rf_unary(allowed, division)
        if self.at("+"):
            self.advance()
            return self.rf_unary(allowed, division)
        return self.rf_power(allowed, division)

    def rf_power(self, allowed, division):
        base = self.rf_atom(allowed, division)
        if self.at("^"):
            caret = self.advance()
            negative = False
            if self.at("-"):
                self.advance()
                negative = True
            e = int(self.expect("int", "integer exponent").text)
            if negative:
                if base.is_zero():
                    raise self.error("zero raised to a negative power", tok=caret, cls=ZeroDenominator)
                return base ** (-e)
            return base ** e
        return base

    def rf_atom(self, allowed, division):
        t = self.tok
        if t.kind == "int":
            self.advance()
            value = Fraction(int(t.text))
            # a rational literal p/q inside a division-free context
            if not division and self.at("/"):
                self.advance()
                d = int(self.expect("int", "integer denominator").text)
                if d == 0:
                    raise self.error("zero denominator in rational literal", tok=t, cls=ZeroDenominator)
                value /= d
            return RationalFunction.coerce(value)
        if t.kind == "name":
            if t.text in allowed:
                self.advance()
                return RationalFunction.var(t.text)
            if t.text in _VARIABLES:
                raise self.error(f"variable {t.text!r} is not allowed here", tuple(allowed))
            raise self.error(f"unknown name {t.text!r}", tuple(allowed))
        if t.kind == "(":
            self.advance()
            value = self.rf_expr(allowed, division)
            self.expect(")", "')'")
            return value
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", ("integer", *allowed, "'('"))

    # -- term-specific pieces ---------------------------------------------

    def affine(self, context_cls):
        start = self.tok
        value = self.rf_expr(("n", "k"), division=False)
        return _to_affine(value, start, context_cls)

    def term_factors(self):
        factors = []
        self.term_factor(factors)
        while self.at("*"):
            self.advance()
            self.term_factor(factors)
        return factors

    def term_factor(self, out):
        while self.at("-"):
            self.advance()
            out.append(Const(Fraction(-1)))
        if self.at("name", "binom"):
            binom_tok = self.advance()
            self.expect("(", "'('")
            top = self.affine(ParseError)
            self.expect(",", "','")
            bottom = self.affine(ParseError)
            self.expect(")", "')'")
            for var in ("n", "k"):
                da, db = getattr(top, var), getattr(bottom, var)
                if da not in (0, 1) or db not in (0, 1):
                    raise self.error(
                        f"binom shift increments in {var} must lie in {{0, 1}}, got ({da}, {db})",
                        tok=binom_tok,
                        cls=UnsupportedShift,
                    )
            out.append(Binom(top, bottom))
            return
        base = self.term_base()
        if self.at("^"):
            self.advance()
            out.append(Power(base, self.exponent()))
        elif base.is_constant():
            out.append(Const(base.constant_value()))
        else:
            out.append(Power(base, Affine(1, 0, 0)))

    def term_base(self):
        t = self.tok
        if t.kind == "name" and t.text == "x":
            self.advance()
            return MultiPoly.var("x")
        if t.kind == "(":
            self.advance()
            value = self.rf_expr(("x",), division=False)
            self.expect(")", "')'")
            return value.num
        if t.kind == "int":
            value = self.rf_atom((), division=False)
            return value.num
        if t.kind == "name" and t.text in ("n", "k"):
            raise self.error(f"{t.text!r} may only appear inside binom(...) or an exponent",
                             ("binom", "x", "'('", "integer"))
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", ("binom", "x", "'('", "integer"))

    def exponent(self):
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Affine(int(t.text), 0, 0)
        if t.kind == "name" and t.text in ("n", "k"):
            self.advance()
            return Affine(0, int(t.text == "n"), int(t.text == "k"))
        if t.kind == "(":
            self.advance()
            value = self.affine(NonAffineExponent)
            self.expect(")", "')'")
            return value
        if t.kind == "name":
            raise self.error(f"exponent {t.text!r} is not an affine form in n, k",
                             cls=NonAffineExponent)
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", ("integer", "n", "k", "'('"))


def _to_affine(value, tok, cls):
    poly = value.num
    ok = value.den.is_one() and poly.degree() <= 1 and X not in poly.variables()
    if ok:
        coeffs = [poly.terms.get(m, Fraction(0)) for m in ((0, 0, 0), (0, 1, 0), (0, 0, 1))]
        ok = all(c.denominator == 1 for c in coeffs)
    if not ok:
        raise cls(f"{value} is not an integer affine form in n, k", tok.line, tok.col)
    return Affine(int(coeffs[0]), int(coeffs[1]), int(coeffs[2]))


# -- abstract syntax -----------------------------------------------------------

@dataclass(frozen=True)
class Affine:
    const: int
    n: int
    k: int

    def as_poly(self):
        return MultiPoly({(0, 0, 0): self.const, (0, 1, 0): self.n, (0, 0, 1): self.k})


@dataclass(frozen=True)
class Binom:
    top: Affine
    bottom: Affine


@dataclass(frozen=True)
class Power:
    base: MultiPoly  # polynomial in x
    exponent: Affine


@dataclass(frozen=True)
class Const:
    value: Fraction


@dataclass(frozen=True)
class TermExpr:
    factors: tuple
    src: str | None = None


def parse_term(src):
    p = _Parser(src)
    factors = p.term_factors()
    p.expect_end()
    return TermExpr(tuple(factors), " ".join(src.split()))


def parse_cert(src):
    """Parse certificate text into a canonical RationalFunction."""
    p = _Parser(src)
    value = p.rf_expr(_VARIABLES, division=True)
    p.expect_end()
    return value


# -- compilation ---------------------------------------------------------------

def _binom_value(a, b):
    # generalised binomial a(a-1)...(a-b+1)/b!, zero for negative b
    if b < 0:
        return Fraction(0)
    num, den = 1, 1
    for i in range(b):
        num *= a - i
        den *= i + 1
    return Fraction(num, den)


def _binom_quotient(top, bottom, da, db):
    """C(A+da, B+db) / C(A, B) for increments in {0, 1}."""
    if (da, db) == (0, 0):
        return RF_ONE
    if (da, db) == (1, 0):
        return RationalFunction(top + 1, top + 1 - bottom)
    if (da, db) == (1, 1):
        return RationalFunction(top + 1, bottom + 1)
    return RationalFunction(top - bottom, bottom + 1)


def compile_factor(f):
    if isinstance(f, Const):
        return HyperTerm(RationalFunction.coerce(f.value), RF_ONE, RF_ONE)
    if isinstance(f, Power):
        p = RationalFunction(f.base)
        e = f.exponent
        if p.is_zero():
            if e.n or e.k or e.const < 0:
                raise ZeroDenominator("zero base with a non-constant or negative exponent")
            return HyperTerm(p ** e.const, RF_ONE, RF_ONE)
        return make_term(p ** e.const, p ** e.n, p ** e.k)
    if isinstance(f, Binom):
        top, bottom = f.top.as_poly(), f.bottom.as_poly()
        base = _binom_value(f.top.const, f.bottom.const)
        rn = _binom_quotient(top, bottom, f.top.n, f.bottom.n)
        rk = _binom_quotient(top, bottom, f.top.k, f.bottom.k)
        return make_term(base, rn, rk)
    raise TypeError(f"unknown factor {f!r}")


def compile_term(e):
    result = HyperTerm(RF_ONE, RF_ONE, RF_ONE)
    for f in e.factors:
        result = term_mul(result, compile_factor(f))
    return make_term(result.base, result.rn, result.rk, src=e.src)


def term_from_source(src):
    return compile_term(parse_term(src))
