"""Factorization and gcd over the rationals, delegated to sympy.

Only this module talks to sympy; everything else sees :class:`Polynomial`.
"""

from __future__ import annotations

import gmpy2
import sympy
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .polynomial import Polynomial
from .rational import Q

_SYM = sympy.Symbol("w")


def _to_sympy(p: Polynomial) -> sympy.Poly:
    coeffs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.c)]
    return sympy.Poly(coeffs, _SYM, domain="QQ")


def _from_sympy(sp: sympy.Poly, var: str) -> Polynomial:
    return Polynomial([Q(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())], var)


def factor_rational(p: Polynomial) -> tuple:
    """Return ``(lc, [(monic irreducible factor, multiplicity), ...])``.

    Factors come sorted by degree, then by coefficient tuple, so the order is
    reproducible.
    """
    if p.degree() < 1:
        return p.lc(), []
    lc, facs = _to_sympy(p).factor_list()
    out = []
    for f, e in facs:
        g = _from_sympy(f, p.var)
        scale = g.lc()
        out.append((g.monic(), e))
        lc = lc * sympy.Rational(int(scale.numerator), int(scale.denominator)) ** e
    out.sort(key=lambda fe: (fe[0].degree(), [str(c) for c in fe[0].c], fe[1]))
    return Q(int(sympy.Rational(lc).p), int(sympy.Rational(lc).q)), out


def is_irreducible(p: Polynomial) -> bool:
    if p.degree() < 1:
        return False
    return _to_sympy(p).is_irreducible


def rational_roots(p: Polynomial) -> list:
    """Distinct rational roots, ascending."""
    _, facs = factor_rational(p)
    return sorted(-f[0] for f, _ in facs if f.degree() == 1)


def norm_polynomial(p: Polynomial, field) -> Polynomial:
    """``prod over embeddings of p`` for ``p`` with coefficients in ``field``.

    Computed as the resultant in the generator of the modulus and ``p``.
    """
    t, q = sympy.Symbol("t"), sympy.Symbol("q")
    gen = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t ** k
              for k, c in enumerate(field.modulus.c))
    expr = 0
    for k, c in enumerate(p.c):
        poly = c.poly.c if hasattr(c, "poly") else [c]
        cs = sum(sympy.Rational(int(Q(a).numerator), int(Q(a).denominator)) * t ** i for i, a in enumerate(poly))
        expr += cs * q ** k
    res = sympy.Poly(sympy.resultant(gen, expr, t), q, domain="QQ")
    return _from_sympy(res, p.var)


def _integer_coefficients(p: Polynomial) -> list:
    den = 1
    for c in p.c:
        den = gmpy2.lcm(den, c.denominator)
    return [ZZ(int(c * den)) for c in reversed(p.c)]


def integer_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials over Q, computed on cleared integer coefficients."""
    g = dup_gcd(_integer_coefficients(a), _integer_coefficients(b), ZZ)
    if not g:
        return Polynomial([], a.var)
    return Polynomial([Q(int(c)) for c in reversed(g)], a.var).monic()
