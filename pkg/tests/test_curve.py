from __future__ import annotations

import pytest
import sympy

from cauchytr.algebra.rational import Q
from cauchytr.algebra.series import INFINITY
from cauchytr.curve import (
    build_curve,
    dS_kernel,
    evaluate_implicit,
    implicit_equation,
    infinities,
    local_involution,
    rf_from_lists,
)
from cauchytr.errors import (
    BranchPointAtInfinity,
    CuspDetected,
    DegenerateCurve,
    EliminationFailure,
    NonSimpleBranchPoint,
)


def test_z3_branch_points_and_involution(z3):
    bps = z3.branch_points()
    assert sorted(bp.alpha for bp in bps) == [-1, 1]
    assert sorted(bp.a for bp in bps) == [-2, 2]
    for i, bp in enumerate(bps):
        s = local_involution(z3, i, 8)
        # sigma(alpha + t) must land on the same x value
        t = sympy.Symbol("t")
        alpha = sympy.Rational(str(bp.alpha))
        st = sum(sympy.Rational(str(s.coefficient(k))) * t**k for k in range(1, 9))
        x = lambda w: w**3 - 3 * w
        diff = sympy.expand(x(alpha + t) - x(alpha + st))
        assert all(diff.coeff(t, k) == 0 for k in range(1, 10))
        assert s.coefficient(1) == -1


def test_z2_involution_is_exact_sign_flip(z2):
    s = local_involution(z2, 0, 10)
    assert [s.coefficient(k) for k in range(1, 11)] == [-1] + [0] * 9


def test_implicit_equation_matches_resultant(z3_rich):
    E = implicit_equation(z3_rich)
    z, X, Y = sympy.symbols("z X Y")
    res = sympy.resultant(z**3 - 3 * z - X, z + z**2 - Y, z)
    ours = sum(sympy.Rational(str(c)) * X**i * Y**k for k, p in enumerate(E.c) for i, c in enumerate(p.c))
    assert sympy.simplify(ours / sympy.Poly(res, X, Y).as_expr()).is_constant()
    for z0 in (Q(1, 3), Q(-5, 2)):
        assert evaluate_implicit(E, z3_rich.x(z0), z3_rich.y(z0)) == 0


def test_non_birational_parametrization_rejected():
    # a y that factors through the covering also has dy = 0 at the branch
    # point, so admission is bypassed to reach the elimination check
    c = build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([1, 0, 1]), order=6, skip_admission=True)
    with pytest.raises(EliminationFailure):
        implicit_equation(c)


@pytest.mark.parametrize("x,y,err", [
    ([0, 0, 0, 1], [0, 1], NonSimpleBranchPoint),
    ([0, 0, 1], [0, 0, 1], CuspDetected),
    ([1], [0, 1], DegenerateCurve),
])
def test_admission_errors(x, y, err):
    with pytest.raises(err):
        build_curve(rf_from_lists(x), rf_from_lists(y))


def test_branch_point_at_infinity_rejected():
    # x = z + 1/z is fine; x = 1/(z^2 - 1) has x' ~ z^-3 so infinity is critical
    build_curve(rf_from_lists([1, 0, 1], [0, 1]), rf_from_lists([0, 1]))
    with pytest.raises(BranchPointAtInfinity):
        build_curve(rf_from_lists([1], [-1, 0, 1]), rf_from_lists([0, 1]))


def test_pole_of_y_at_branch_point_rejected():
    with pytest.raises(DegenerateCurve):
        build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([1], [0, 1]))


def test_infinities_of_builder(builder):
    pts = infinities(builder)
    assert [p.label for p in pts] == ["inf0", "inf1", "inf2"]
    assert all(p.ramification == 1 for p in pts)
    assert pts[0].z0 == INFINITY


def test_ds_kernel_coefficients(z2):
    """For x = z^2 at 0: 1/(q - t) - 1/(q + t) = 2t/q^2 + 2 t^3/q^4 + ..."""
    k = dS_kernel(z2, 0, 5)
    q = Q(3)
    assert k.coefficient(1)(q) == Q(2, 9)
    assert k.coefficient(2)(q) == 0
    assert k.coefficient(3)(q) == Q(2, 81)


def test_fingerprint_tracks_y(z2):
    assert z2.fingerprint == z2.with_base_point(Q(5)).fingerprint
    assert z2.fingerprint != z2.scaled(2).fingerprint
