"""Find a rational WZ certificate by a bounded-degree linear ansatz.

The certificate is sought as ``u(n,k) / v(n,k)`` with ``v`` fixed from the
term's shift quotients and ``u`` a polynomial of bounded total degree with
unknown coefficients.  Substituting into the divided WZ equation and
clearing denominators gives a polynomial identity in (x, n, k) that is
linear in the unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoCertificate, WZError
from .hyperterm import shift_k
from .linsolve import linsolve
from .poly import K, N, ONE, X, MultiPoly, order_key, poly_gcd
from .ratfunc import RationalFunction
from .wz import verify_pair


@dataclass(frozen=True)
class Ansatz:
    denominator: MultiPoly
    degree_bound: int
    monomials: tuple

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ValueError("ansatz denominator must be nonzero")
        if X in self.denominator.variables():
            raise ValueError("ansatz denominator must not involve x")
        if self.monomials != nk_monomials(self.degree_bound):
            raise ValueError("monomials must be all (n, k)-monomials up to the degree bound")


def nk_monomials(d):
    """All monomials in n, k of total degree <= d, ascending in the canonical order."""
    monos = [(0, a, b) for a in range(d + 1) for b in range(d + 1 - a)]
    return tuple(sorted(monos, key=order_key))


def x_free_part(p):
    """Product of the factors of ``p`` that do not involve x (its content in x)."""
    if p.is_zero():
        return ONE
    g = None
    for c in p.coeffs_in(X).values():
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            return ONE
    return g.monic()


def radical(p):
    """Product of the distinct irreducible factors of ``p`` (its squarefree part).

    In characteristic zero, gcd(p, dp/dn, dp/dk) collects every repeated
    factor once less than in p, so dividing it out leaves each factor once.
    No factorisation is needed.
    """
    if p.is_constant():
        return ONE
    g = p
    for var in (N, K, X):
        d = p.derivative(var)
        if not d.is_zero():
            g = poly_gcd(g, d)
    return p.exact_div(g).monic()


def default_ansatz(f, d, s=0):
    """Denominator from the x-free factors of the denominators of rn and rk, shifted in k by 0..s.

    Each shift widens the denominator; the numerator degree bound grows by the
    same amount so that every certificate found at span s is still reachable
    at span s + 1.
    """
    if d < 0 or s < 0:
        raise ValueError("degree bound and shift span must be nonnegative")
    base = radical(x_free_part(f.rn.den) * x_free_part(f.rk.den))
    den = base
    for j in range(1, s + 1):
        den = den * _shift_poly_k(base, j)
    den = radical(den)
    bound = d + den.degree() - base.degree()
    return Ansatz(den, bound, nk_monomials(bound))


def _shift_poly_k(p, by=1):
    return shift_k(RationalFunction(p), by).num


def residual_system(f, ansatz):
    """Linear system (matrix, rhs, monomial rows) for the ansatz coefficients.

    With rn = pn/qn, rk = pk/qk, u' = u(n,k+1), v' = v(n,k+1), the divided WZ
    equation times qn*qk*v*v' reads

        (pn - qn) qk v v' - qn pk u' v + qn qk u v' = 0.
    """
    pn, qn = f.rn.num, f.rn.den
    pk, qk = f.rk.num, f.rk.den
    v = ansatz.denominator
    v1 = _shift_poly_k(v)
    constant = (pn - qn) * qk * v * v1
    a = qn * pk * v
    b = qn * qk * v1
    columns = []
    for mono in ansatz.monomials:
        m = MultiPoly({mono: 1})
        columns.append(b * m - a * _shift_poly_k(m))
    rows = set(constant.terms)
    for col in columns:
        rows.update(col.terms)
    rows = sorted(rows, key=order_key, reverse=True)
    zero = Fraction(0)
    matrix = [[col.terms.get(r, zero) for col in columns] for r in rows]
    rhs = [-constant.terms.get(r, zero) for r in rows]
    return matrix, rhs, rows


def discover(f, ansatz):
    """Certificate r with verify_pair(f, r) == 0, or raise NoCertificate."""
    matrix, rhs, _ = residual_system(f, ansatz)
    solution = linsolve(matrix, rhs, ncols=len(ansatz.monomials))
    if solution is None:
        raise NoCertificate(
            f"no certificate with numerator degree <= {ansatz.degree_bound} over "
            f"{ansatz.denominator}; try a larger degree bound or shift span"
        )
    u = MultiPoly(dict(zip(ansatz.monomials, solution)))
    r = RationalFunction(u, ansatz.denominator)
    residual = verify_pair(f, r)
    if not residual.is_zero():
        raise WZError(f"internal error: discovered certificate {r} leaves residual {residual}")
    return r
