from __future__ import annotations

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cauchytr.algebra.polynomial import Polynomial
from cauchytr.algebra.ratfunc import RationalFunction
from cauchytr.algebra.rational import Q
from cauchytr.cauchy import extract_model
from cauchytr.energy.hop import H_apply, dilaton_check, free_energy_h, homogeneity_check
from cauchytr.energy.logvalue import LogValue
from cauchytr.energy.moduli import (
    ModuliDirection,
    f0_finite_difference,
    f1_gradient,
    free_energy_0,
    j_apply,
    scaling_identity_check,
    ydx_decomposition_check,
)
from cauchytr.energy.primitive import Primitive, hermite_reduce
from cauchytr.energy.psi import psi
from cauchytr.errors import UnsupportedDirection
from cauchytr.recursion import SPLIT_LITERAL, engine_for

small = st.integers(min_value=2, max_value=60)


# LogValue ---------------------------------------------------------------------------
def test_log_identities_are_exact():
    assert LogValue.log(6) == LogValue.log(2) + LogValue.log(3)
    assert LogValue.log(Q(8, 9)) == LogValue.log(2, 3) - LogValue.log(3, 2)
    assert not LogValue.log(2) == LogValue.log(3)
    assert LogValue.log(-2).ipi == 1 and LogValue.log_abs(-2) == LogValue.log(2)


@given(small, small)
@settings(max_examples=50, deadline=None)
def test_log_numeric_matches_mpmath(a, b):
    v = LogValue(Q(1, 3)) + LogValue.log(Q(a, b), Q(5, 7))
    with mpmath.workdps(30):
        ref = mpmath.mpf(1) / 3 + mpmath.mpf(5) / 7 * mpmath.log(mpmath.mpf(a) / b)
        assert abs(v.numeric(30) - ref) < mpmath.mpf(10) ** -25


def test_logvalue_json_round_trip():
    v = LogValue(Q(2, 5)) + LogValue.log(Q(-12, 35), Q(3, 4))
    assert LogValue.from_json(v.to_json(20)) == v


# primitives ---------------------------------------------------------------------------
def test_hermite_reduction_against_sympy():
    z = sympy.Symbol("z")
    phi = RationalFunction(Polynomial([Q(1), Q(2), Q(0), Q(1)]), Polynomial([Q(0), Q(0), Q(-1), Q(1)]))
    P = Primitive(phi)
    assert P.check()
    expr = (1 + 2 * z + z**3) / (z**2 * (z - 1))
    ref = sympy.integrate(expr, z)
    # the rational parts agree up to a constant
    rat_ref = ref.subs({sympy.log(z): 0, sympy.log(z - 1): 0})
    ours = sum(sympy.Rational(str(c)) * z**k for k, c in enumerate(P.rational.num.c)) / \
        sum(sympy.Rational(str(c)) * z**k for k, c in enumerate(P.rational.den.c))
    assert sympy.simplify(sympy.diff(ours - rat_ref, z)) == 0
    R, logs = hermite_reduce(phi)
    assert len(logs) >= 1


def test_psi_normalized_and_differentiates_to_ydx(builder):
    P = psi(builder)
    assert P.check()
    assert P.value(builder.base_point) == LogValue(0)
    # a numerical derivative of Psi reproduces y dx/dz
    z0, h = Q(7, 2), Q(1, 10**6)
    with mpmath.workdps(30):
        d = (P.value(z0 + h).numeric(30) - P.value(z0 - h).numeric(30)) / (2 * mpmath.mpf(1) / 10**6)
        ref = builder.ydx()(z0)
        assert abs(d - mpmath.mpf(int(ref.numerator)) / int(ref.denominator)) < mpmath.mpf(10) ** -8


# H operator and free energies ----------------------------------------------------------
def test_H_on_bergman_gives_minus_ydx(z3_rich):
    assert (H_apply(z3_rich, engine_for(z3_rich).omega(2, 0)) + z3_rich.ydx()).is_zero()


def test_free_energies_vanish_for_y_equal_z(z2, z3):
    # for y = z the swapped curve x~ = z has no branch points, so F_h = 0 by x-y symmetry
    assert free_energy_h(z2, 2) == 0
    assert free_energy_h(z3, 2) == 0


def test_free_energy_values(z2_rich, z3_rich):
    assert free_energy_h(z2_rich, 2) == Q(21, 640)
    assert free_energy_h(z3_rich, 2) == Q(-56, 98415)


@pytest.mark.slow
def test_free_energy_three(z2_rich):
    assert free_energy_h(z2_rich, 3) == Q(-2205, 4096)


@pytest.mark.parametrize("h,kappa", [(2, 2), (2, 3)])
def test_homogeneity(z2_rich, h, kappa):
    rep = homogeneity_check(z2_rich, h, kappa)
    assert rep.passed, rep.detail


def test_base_point_independence(z3_rich):
    o1, o2 = Q(1, 2), Q(7, 3)
    assert free_energy_h(z3_rich, 2, o1) == free_energy_h(z3_rich, 2, o2)
    e = engine_for(z3_rich)
    assert H_apply(z3_rich, e.omega(3, 1), o1) == H_apply(z3_rich, e.omega(3, 1), o2)


@pytest.mark.parametrize("n,h", [(3, 0), (1, 1), (2, 1), (1, 2)])
def test_dilaton_holds_with_negated_right_side(z3_rich, n, h):
    """With the minus-sign recursion kernel, the dilaton identity holds as lhs = -rhs."""
    rep = dilaton_check(z3_rich, n, h)
    assert not rep.passed
    assert rep.detail.get("uniform_ratio") == "-1"


def test_literal_splitting_breaks_dilaton_non_uniformly(z3_rich):
    rep = dilaton_check(z3_rich, 2, 1, splitting=SPLIT_LITERAL)
    assert not rep.passed and "uniform_ratio" not in rep.detail


# moduli ------------------------------------------------------------------------------------
def test_direction_names_round_trip():
    for s in ["T", "eta1", "eta2", "tm1_1", "tm1_2", "t1_3", "t2_1"]:
        assert ModuliDirection.parse(s).name() == s
    with pytest.raises(ValueError):
        ModuliDirection.parse("bogus")


def test_ydx_decomposition_and_negative_control(builder):
    model = extract_model(builder)
    assert ydx_decomposition_check(builder, model).passed
    assert not ydx_decomposition_check(builder, model, perturb={"T": Q(1, 1000)}).passed


def test_filling_fraction_rows_unsupported(builder):
    with pytest.raises(UnsupportedDirection):
        j_apply(builder, ModuliDirection.filling_fraction(1), builder.ydx())


def test_free_energy_0_scales_quadratically(builder):
    F = free_energy_0(builder)
    F2 = free_energy_0(builder.scaled(3))
    assert F2 == F * 9


@pytest.mark.parametrize("name", ["T", "t1_1"])
def test_f0_gradient_by_finite_differences(builder, name):
    est, exact = f0_finite_difference(builder, ModuliDirection.parse(name))
    assert abs(est - exact) <= 1e-6 * abs(exact)


@pytest.mark.parametrize("name", ["T", "eta1", "eta2", "tm1_1", "tm1_2", "t1_1", "t2_1"])
def test_f1_gradient_two_ways(builder, builder_engine, name):
    res = f1_gradient(builder, ModuliDirection.parse(name), builder_engine)
    assert res["agree"], (res["direct"], res["assembled"])


def test_branch_points_fixed_by_rescaling(builder, builder_engine):
    assert scaling_identity_check(builder, engine=builder_engine).passed
