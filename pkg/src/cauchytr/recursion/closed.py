"""Closed-form one-point genus-one correlator from local jets at the branch points.

With ``u`` the normalized local parameter (``x - x(alpha) = c2 u^2``) and all
jets taken in ``u``, each branch point contributes

    (1/c2) [ B''(q)/(96 y') + B(q) (S/(24 y') - y'''/(96 y'^2)) ],

where ``B(q) = B(q, z(u))/du`` at ``u = 0`` with its ``u``-derivatives, and
``S`` is six times the constant term of ``B(u1, u2) - du1 du2/(u1 - u2)^2``
at ``u1 = u2 = 0``.  Passing to the true square-root parameter
``zeta = sqrt(c2) u`` rescales each term by exactly ``1/c2``.
"""

from __future__ import annotations

from ..algebra.numberfield import trace_rational_function
from ..algebra.polynomial import Polynomial
from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q
from ..algebra.series import LaurentSeries
from .multidiff import MultiDifferential

JET_ORDER = 8


def projective_connection(bp) -> object:
    """``S`` at a branch point: 6 x the regular part of ``tau'(u)/tau(u)^2 - 1/u^2`` at 0.

    ``tau(u) = z(u) - alpha``; this is the diagonal constant term of the Bergman
    kernel in ``u`` with one point fixed at the branch point.
    """
    tau = bp.zeta_inverse.truncate(JET_ORDER)
    f = tau.derivative() * (tau * tau).inverse()
    one = tau.leading() * 0 + 1
    f = f - LaurentSeries([one], -2, f.order)
    return f.coefficient(0) * 6


def schwarzian_at_zero(bp) -> object:
    """``{z; u}`` at ``u = 0`` from the Taylor coefficients of ``z(u)``."""
    tau = bp.zeta_inverse
    t1, t2, t3 = tau.coefficient(1), tau.coefficient(2), tau.coefficient(3)
    return (t3 * 6) / t1 - (t2 * t2 * 6) / (t1 * t1)


def bergman_jets(bp, count: int = 3, var: str = "q") -> list[RationalFunction]:
    """``d^k/du^k [B(q, z(u)) z'(u)]`` at ``u = 0`` for ``k < count``, over ``Q(alpha)``.

    Uses ``B(q, z) = dq dz/(q - z)^2`` and expands in powers of ``tau = z - alpha``.
    """
    tau = bp.zeta_inverse.truncate(count + 2)
    dtau = tau.derivative()
    alpha = bp.alpha
    one = alpha * 0 + 1
    lin = Polynomial([-alpha, one], var)
    out = []
    fact = 1
    for k in range(count):
        if k:
            fact *= k
        # [u^k] tau'(u) * sum_m (m+1) tau^m / (q-alpha)^(m+2); tau^m has valuation m
        num = Polynomial([], var)
        top = k + 2
        for m in range(k + 1):
            c = (dtau * tau ** m).coefficient(k) if m else dtau.coefficient(k)
            if not c == 0:
                num = num + lin ** (top - m - 2) * (c * (m + 1))
        out.append(RationalFunction(num * fact, lin ** top, var, reduce=False))
    return out


def local_coefficients(bp) -> tuple:
    """Coefficients ``(c0, c1)`` of ``xi_{alpha,0}`` and ``xi_{alpha,1}`` in the closed form."""
    _, y1, _, y3 = bp.y_jet
    S = projective_connection(bp)
    c2 = bp.scale_sq
    c0 = (S / (y1 * 24) - y3 / (y1 * y1 * 96)) / c2
    c1 = Q(1) / (y1 * c2 * 16)
    return c0, c1


def omega11_closed_rational(curve, var: str = "q") -> RationalFunction:
    """The closed form as a rational function over Q, built from Bergman jets directly."""
    total = RationalFunction.constant(Q(0), var)
    for bp in curve.branch_points(max(curve.default_order, JET_ORDER + 2)):
        _, y1, _, y3 = bp.y_jet
        S = projective_connection(bp)
        B0, _, B2 = bergman_jets(bp, 3, var)
        local = B2 * (Q(1) / (y1 * 96)) + B0 * (S / (y1 * 24) - y3 / (y1 * y1 * 96))
        local = local * (Q(1) / bp.scale_sq)
        if bp.is_rational:
            total = total + local
        else:
            total = total + trace_rational_function(local, bp.field)
    return total


def omega11_closed(curve, basis=None) -> MultiDifferential:
    """The closed form on the odd principal-part basis."""
    from .basis import XiBasis

    basis = basis or XiBasis(curve)
    data = {}
    for a, bp in enumerate(curve.branch_points(max(curve.default_order, JET_ORDER + 2))):
        beta = basis.dual_basis(a)
        for d, c in enumerate(local_coefficients(bp)):
            for j, b in enumerate(beta):
                v = Q(c) if bp.is_rational else bp.field.trace(c * b)
                if not v == 0:
                    data[((a, d, j),)] = v
    return MultiDifferential(1, 1, basis, data)
