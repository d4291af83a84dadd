"""Independent reference computations.

Nothing here touches the polynomial kernel: binomials come straight from
big-integer factorials and polynomials in x are dense coefficient lists
(index = power of x).  These are the yardsticks the machinery is checked
against.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def binomial(a, b):
    """C(a, b) for integers a >= 0, computed from factorials; 0 outside 0 <= b <= a."""
    if a < 0:
        raise ValueError("binomial oracle only covers a >= 0")
    if b < 0 or b > a:
        return 0
    return factorial(a) // (factorial(b) * factorial(a - b))


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def add(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def scale(p, c):
    return trim([c * v for v in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p, e):
    out = [1]
    for _ in range(e):
        out = mul(out, p)
    return out


def x_power(e):
    return [0] * e + [1]


ONE_MINUS_X = [1, -1]


def cb_term(n, k):
    """C(n+k, k) x^k (1-x)^(n+1) as a dense polynomial."""
    return scale(mul(x_power(k), power(ONE_MINUS_X, n + 1)), binomial(n + k, k))


def chaundy_bullard_summands(m, n):
    first = mul(
        power(ONE_MINUS_X, n + 1),
        trim([binomial(n + k, k) for k in range(m + 1)]),
    )
    second = []
    for k in range(n + 1):
        second = add(second, scale(power(ONE_MINUS_X, k), binomial(m + k, k)))
    second = mul(x_power(m + 1), second)
    return first, second


def chaundy_bullard(m, n):
    first, second = chaundy_bullard_summands(m, n)
    return add(first, second)


def to_dense(poly):
    """Dense coefficients of a kernel polynomial that involves only x."""
    out = {}
    for (ex, en, ek), c in poly.terms.items():
        if en or ek:
            raise ValueError(f"{poly} depends on n or k")
        out[ex] = c
    if not out:
        return []
    return trim([Fraction(out.get(i, 0)) for i in range(max(out) + 1)])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc
