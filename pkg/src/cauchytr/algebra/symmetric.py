"""Symmetric sums over the roots of a polynomial with function coefficients.

``fiber_sum(g, P)`` is the trace of ``g`` in the quotient ring ``K[w]/(P)``:
reduce ``g`` modulo ``P``, then pair its coefficients with the Newton power
sums of the roots.  No root is ever computed, so the result stays in ``K``
(for example ``K = Q(X)``, giving an exact rational function of ``X``).
"""

from __future__ import annotations

from ..errors import NonSeparable, PoleCollision
from .polynomial import Polynomial, poly_gcd, poly_xgcd, power_sums
from .ratfunc import RationalFunction
from .rational import Q


def _reduce(g, P: Polynomial) -> Polynomial:
    """Representative of ``g`` in ``K[w]/(P)`` of degree below ``deg P``."""
    if isinstance(g, Polynomial):
        return g.with_var(P.var) % P
    if isinstance(g, RationalFunction):
        num = g.num.with_var(P.var) % P
        den = g.den.with_var(P.var) % P
        if den.is_zero():
            raise PoleCollision("denominator vanishes identically on the fibre")
        d, s, _ = poly_xgcd(den, P)
        if d.degree() > 0:
            raise PoleCollision("summand has a pole at a root of the fibre polynomial")
        return (num * s) % P
    return Polynomial([g], P.var)


def fiber_sum(g, P: Polynomial):
    """Sum of ``g(w_i)`` over the roots ``w_i`` of ``P``, as an element of ``K``."""
    if P.degree() < 1:
        raise ValueError("fibre polynomial must have positive degree")
    if poly_gcd(P, P.derivative()).degree() > 0:
        raise NonSeparable("fibre polynomial has repeated roots identically")
    Pm = P.monic()
    h = _reduce(g, Pm)
    d = Pm.degree()
    ps = power_sums(Pm, d)
    total = None
    for k in range(d):
        term = h[k] * ps[k]
        total = term if total is None else total + term
    return total


def fiber_polynomial(x: RationalFunction, var: str = "w", xvar: str = "X") -> Polynomial:
    """``num_x(w) - X * den_x(w)``, whose roots are the preimages of ``X``."""
    coeffs = []
    n = max(x.num.degree(), x.den.degree()) + 1
    for k in range(n):
        coeffs.append(RationalFunction(Polynomial([x.num[k], -x.den[k]], xvar), None, xvar, reduce=False))
    return Polynomial(coeffs, var)


def lift_coefficients(f: RationalFunction, xvar: str = "X", var: str = "w") -> RationalFunction:
    """Rational function in ``var`` whose rational coefficients are constants of ``Q(xvar)``."""
    def up(p: Polynomial) -> Polynomial:
        return Polynomial([RationalFunction.constant(c, xvar) for c in p.c], var)

    return RationalFunction(up(f.num), up(f.den), var, reduce=False)


def sheet_sum(f: RationalFunction, x: RationalFunction, xvar: str = "X") -> RationalFunction:
    """Sum of ``f`` over all preimages of a generic ``X`` under ``x``."""
    fast = sheet_sum_fast(f, x, xvar)
    if fast is not None:
        return fast
    P = fiber_polynomial(x, "w", xvar)
    g = lift_coefficients(f, xvar, "w")
    out = fiber_sum(g, P)
    if not isinstance(out, RationalFunction):
        out = RationalFunction.constant(out, xvar)
    return out


# denominator-free sheet sums ---------------------------------------------------------
def _reduce_monic(coeffs: list, P: list, zero) -> list:
    """Reduce ``sum coeffs[i] w^i`` modulo the monic ``w^d + sum P[i] w^i`` (entries in Q[X])."""
    d = len(P)
    cs = list(coeffs)
    for k in range(len(cs) - 1, d - 1, -1):
        c = cs[k]
        if c == 0:
            continue
        for i in range(d):
            if not P[i] == 0:
                cs[k - d + i] = cs[k - d + i] - c * P[i]
        cs[k] = zero
    cs = cs[:d] + [zero] * max(0, d - len(cs))
    return cs


def _mulmod(a: list, b: list, P: list, zero) -> list:
    prod = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if not y == 0:
                prod[i + j] = prod[i + j] + x * y
    return _reduce_monic(prod, P, zero)


def _det(M: list):
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0] * 0


def _adjugate_first_column(M: list) -> list:
    """Column ``adj(M) e_0``: entry ``i`` is the cofactor ``C_{0,i}``."""
    n = len(M)
    out = []
    for i in range(n):
        minor = [row[:i] + row[i + 1:] for row in M[1:]] if n > 1 else []
        c = _det(minor) if minor else M[0][0] * 0 + 1
        out.append(-c if i % 2 else c)
    return out


def sheet_sum_fast(f: RationalFunction, x: RationalFunction, xvar: str = "X") -> RationalFunction | None:
    """Sheet sum computed in ``Q[X][w]/(P)`` without any division until the end.

    Needs the fibre polynomial ``num_x(w) - X den_x(w)`` to have a constant
    leading coefficient (``x`` has a pole at ``z = infinity`` of order
    ``deg num_x - deg den_x >= 1``); returns ``None`` otherwise.
    """
    import sympy

    a, b = x.num, x.den
    if a.degree() <= b.degree():
        return None
    d = a.degree()
    lc = a.lc()
    one = Polynomial([Q(1)], xvar)
    zero = Polynomial([], xvar)
    # monic fibre polynomial coefficients P[i] (i < d), each linear in X
    P = []
    for i in range(d):
        P.append(Polynomial([a[i] / lc, -b[i] / lc], xvar))

    def lift(p: Polynomial) -> list:
        return [one * c for c in p.c] or [zero]

    N = _reduce_monic(lift(f.num), P, zero)
    D = _reduce_monic(lift(f.den), P, zero)
    # multiplication matrix of D: column i holds D * w^i
    cols = []
    cur = D
    for i in range(d):
        cols.append(cur)
        cur = _reduce_monic([zero] + cur, P, zero)
    M = [[cols[j][i] for j in range(d)] for i in range(d)]
    det = _det(M)
    if det == 0:
        raise PoleCollision("summand has a pole along a whole fibre")
    E = _adjugate_first_column(M)  # coordinates of det / D
    NE = _mulmod(N, E, P, zero)
    ps = _newton_sums(P, d, one)
    tr = zero
    for i in range(d):
        tr = tr + NE[i] * ps[i]
    Xs = sympy.Symbol(xvar)

    def to_sp(p: Polynomial):
        return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.c)] or [0], Xs,
                          domain="QQ")

    num_sp, den_sp = to_sp(tr).cancel(to_sp(det), include=True)

    def back(p) -> Polynomial:
        return Polynomial([Q(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())], xvar)

    nb, db = back(num_sp), back(den_sp)
    inv = Q(1) / db.lc()
    return RationalFunction(nb.scale(inv), db.scale(inv), xvar, reduce=False)


def _newton_sums(P: list, count: int, one) -> list:
    """Power sums of the roots of the monic ``w^d + sum P[i] w^i``."""
    d = len(P)
    a = [one] + [P[d - i] for i in range(1, d + 1)]  # a[i]: coefficient of w^(d-i)
    s = [one * d]
    for k in range(1, count):
        acc = a[k] * k if k <= d else one * 0
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + a[i] * s[k - i]
        s.append(-acc)
    return s
