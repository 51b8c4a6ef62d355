"""Exact primitives of rational differentials and their regularized endpoint values.

A rational function ``phi`` over Q is split by Hermite reduction into
``R' + sum_f A_f/f`` with squarefree irreducible ``f`` and ``deg A_f < deg f``,
so a primitive is ``R + sum_f sum_{f(r)=0} (A_f(r)/f'(r)) ln(z - r)``.
"""

from __future__ import annotations

from ..algebra.factor import factor_rational
from ..algebra.polynomial import Polynomial, inverse_mod, poly_xgcd
from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q
from ..algebra.series import INFINITY, LaurentSeries, laurent_expand
from ..errors import UnsupportedDirection
from .logvalue import LogValue


def hermite_reduce(phi: RationalFunction) -> tuple[RationalFunction, list]:
    """``(R, [(f, A), ...])`` with ``phi = R' + sum A/f``."""
    var = phi.var
    q, r = phi.num.divmod(phi.den)
    R = RationalFunction(q.integral(), Polynomial([Q(1)], var), var)
    logs: list = []
    if r.is_zero():
        return R, logs
    D = phi.den
    lc, facs = factor_rational(D)
    for f, e in facs:
        De = f ** e
        C = D // De
        Ni = (r * inverse_mod(C, De)) % De
        Ni = Ni.scale(Q(1) / lc)
        m = e
        fp = f.derivative()
        _, s, t = _bezout(f, fp)
        while m > 1 and not Ni.is_zero():
            # Ni/f^m = S/f^(m-1) + T f'/f^m with T = Ni t mod f
            T = (Ni * t) % f
            S = (Ni - T * fp) // f
            R = R + RationalFunction(-T, f ** (m - 1), var) * (Q(1) / (m - 1))
            Ni = S + T.derivative().scale(Q(1) / (m - 1))
            m -= 1
        if not Ni.is_zero():
            qq, rr = Ni.divmod(f)
            if not qq.is_zero():
                raise ArithmeticError("partial fraction numerator too large")
            if not rr.is_zero():
                logs.append((f, rr))
    return R, logs


def _bezout(f: Polynomial, fp: Polynomial):
    g, s, t = poly_xgcd(f, fp)
    inv = Q(1) / g.lc()
    return g.scale(inv), s.scale(inv), t.scale(inv)


class Primitive:
    """A primitive of ``phi dz`` kept as a rational part plus logarithms.

    The additive constant is fixed by the representation, which is all the
    regularized values below need because they only enter through
    differences or together with a vanishing total residue.
    """

    def __init__(self, phi: RationalFunction):
        self.phi = phi
        self.var = phi.var
        self.rational, self.logs = hermite_reduce(phi)
        self.log_part = RationalFunction.constant(Q(0), self.var)
        for f, A in self.logs:
            self.log_part = self.log_part + RationalFunction(A, f, self.var)

    def check(self) -> bool:
        return self.rational.derivative() + self.log_part == self.phi

    @property
    def has_logs(self) -> bool:
        return bool(self.logs)

    def log_roots(self) -> list:
        """``[(root, coefficient)]`` when every logarithm has a rational argument."""
        out = []
        for f, A in self.logs:
            if f.degree() != 1:
                raise UnsupportedDirection(f"logarithm at the roots of {f} is not over Q")
            r = -f[0] / f[1]
            out.append((r, A(r) / f.derivative()(r)))
        return out

    # local data ----------------------------------------------------------------
    def local_series(self, alpha, order: int, base=None) -> LaurentSeries:
        """``Psi(alpha + t) - Psi_rational(base)`` up to the log constant, in ``t``.

        The log terms contribute their integral from ``alpha``; their constant
        ``sum c ln(alpha - r)`` is dropped.
        """
        head = laurent_expand(self.rational, alpha, order)
        if head.val < 0:
            raise ValueError("primitive has a pole at the expansion point")
        if base is not None:
            head = head - self.rational(base)
        else:
            head = head - head.coefficient(0)
        if self.logs:
            tail = laurent_expand(self.log_part, alpha, order - 1)
            if tail.val < 0:
                raise ValueError("logarithmic singularity at the expansion point")
            head = head + tail.integral()
        return head

    def regularized_value(self, curve, point) -> LogValue:
        """Finite part ``lim [Psi - P(x) - c ln x]`` at a simple pole of ``x``.

        ``P`` is a polynomial without constant term; the limit is read in the
        local coordinate ``s = z - b`` (or ``1/z`` at infinity).
        """
        b = point.z0
        if point.ramification != 1 or not point.is_rational:
            raise UnsupportedDirection("regularization needs a simple rational point over x = infinity")
        order = 4 + _pole_order(self.rational, b)
        X = laurent_expand(curve.x, b, order)
        if X.val != -1:
            raise UnsupportedDirection("x does not have a simple pole at the endpoint")
        A = X.leading()
        value = self._rational_finite_part(X, b, order)
        out = LogValue(value)
        if not self.logs:
            return out
        roots = self._log_terms()
        if b == INFINITY:
            total = sum((c * (r[1].degree() if isinstance(r, tuple) else 1) for r, c in roots), Q(0))
            return out - LogValue.log_abs(A, total)
        for r, c in roots:
            if isinstance(r, tuple):
                f = r[1]
                if f(b) == 0:
                    raise UnsupportedDirection("endpoint is a root of an irrational logarithm")
                out = out + LogValue.log_abs(f(b), c)
            elif r == b:
                out = out + LogValue.log_abs(A, c)
            else:
                out = out + LogValue.log_abs(b - r, c)
        return out

    def _log_terms(self) -> list:
        out = []
        for f, A in self.logs:
            if f.degree() == 1:
                r = -f[0] / f[1]
                out.append((r, A(r) / f.derivative()(r)))
                continue
            # all roots share one coefficient only when A is a multiple of f'
            fp = f.derivative()
            c = A.lc() / fp.lc()
            if not A == fp.scale(c):
                raise UnsupportedDirection(f"logarithms at the roots of {f} have unequal coefficients")
            out.append((("norm", f), c))
        return out

    def _rational_finite_part(self, X: LaurentSeries, b, order: int):
        R = laurent_expand(self.rational, b, order)
        while R.val < 0:
            m = -R.val
            c = R.leading() / X.leading() ** m
            R = R - (X ** m).truncate(R.order) * c
        return R.coefficient(0)


def _pole_order(f: RationalFunction, b) -> int:
    if b == INFINITY:
        return max(0, f.num.degree() - f.den.degree())
    k = 0
    den = f.den
    lin = Polynomial([-b, Q(1)], f.var)
    while den.degree() > 0 and den(b) == 0:
        den = den // lin
        k += 1
    return k


__all__ = ["Primitive", "hermite_reduce"]
