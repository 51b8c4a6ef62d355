from __future__ import annotations

import pytest

from cauchytr.algebra.ratfunc import RationalFunction
from cauchytr.algebra.rational import Q
from cauchytr.cauchy import (
    BuilderSpec,
    build_cauchy_curve,
    extract_model,
    fixture_x,
    loop_equation_check,
    structure_check,
    variation_identity_check,
)
from cauchytr.curve import build_curve, rf_from_lists
from cauchytr.errors import InfeasibleConstraints, NotCubic, RamifiedInfinity


def test_structure_of_builder(builder):
    rep = structure_check(builder)
    assert rep.passed and rep.consistent
    assert rep.R_pole["pole_order_at_0"] <= 2 and rep.D_pole["pole_order_at_0"] <= 3


def test_structure_not_cubic(z2):
    with pytest.raises(NotCubic):
        structure_check(z2)


def test_nonzero_sheet_sum_is_detected():
    x = fixture_x()
    c = build_curve(x, rf_from_lists([1, 1]))
    rep = structure_check(c)
    assert not rep.sheet_sum_vanishes and not rep.y2_coefficient_vanishes and rep.consistent


def test_polynomial_cubic_is_not_two_matrix(z3):
    rep = structure_check(z3)
    assert not rep.three_simple_infinities
    with pytest.raises(RamifiedInfinity):
        extract_model(z3)


def test_builder_round_trips_prescribed_moduli():
    spec = BuilderSpec.fixture(T=Q(3, 2), eta1=Q(1, 3), eta2=Q(-1, 5), seed=4)
    c = build_cauchy_curve(spec)
    m = extract_model(c)
    assert (m.T, m.eta1, m.eta2) == (Q(3, 2), Q(1, 3), Q(-1, 5))
    assert m.gauge == "hint"


def test_builder_model(builder):
    m = extract_model(builder)
    assert (m.T, m.eta1, m.eta2) == (1, 0, 0)
    assert m.gauge == "hint"


def test_builder_infeasible():
    spec = BuilderSpec(fixture_x(), 0, {}, T=Q(1))
    with pytest.raises(InfeasibleConstraints):
        build_cauchy_curve(spec)


def test_builder_is_deterministic():
    a = build_cauchy_curve(BuilderSpec.fixture())
    b = build_cauchy_curve(BuilderSpec.fixture())
    assert a.fingerprint == b.fingerprint


def test_variation_identity(z3, builder):
    assert variation_identity_check(z3).passed
    assert variation_identity_check(builder).passed
    assert not variation_identity_check(z3, kernel_scale=2).passed


@pytest.mark.parametrize("h", [1, 2])
def test_loop_equation(builder, builder_engine, h):
    rep = loop_equation_check(builder, h, builder_engine)
    assert rep.passed, rep.to_json()


def test_loop_equation_negative_control(builder, builder_engine):
    w = builder_engine.omega(1, 1).to_rational_function("z")
    z = RationalFunction.gen("z")
    bump = RationalFunction.constant(Q(1, 1000), "z") / ((z - 3) ** 4)
    rep = loop_equation_check(builder, 1, builder_engine, omega11_override=w + bump)
    assert not rep.passed
