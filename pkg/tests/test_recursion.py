from __future__ import annotations

import json

import pytest
import sympy

from cauchytr.algebra.rational import Q
from cauchytr.cli.suites import levels
from cauchytr.errors import CacheMismatch
from cauchytr.recursion import (
    SPLIT_LITERAL,
    RecursionEngine,
    engine_for,
    omega,
    omega11_closed,
    verify_structure,
)
from cauchytr.recursion.multidiff import MultiDifferential

from .oracle import z2_oracle, z3_oracle

PTS = (Q(1, 3), Q(5, 2), Q(-7, 4), Q(9, 5))


def _sym(v):
    return sympy.Rational(str(v))


def test_omega11_on_z2_exact(z2):
    w = omega(z2, 1, 1).to_rational_function("z")
    z = Q(3)
    assert w(z) == Q(1, 16) / z**4


@pytest.mark.parametrize("name,coeffs", [("z2", (0, 1, 0, 1)), ("z3", (0, 1, 1))])
def test_omega11_against_oracle(name, coeffs, z2_rich, z3_rich):
    curve = {"z2": z2_rich, "z3": z3_rich}[name]
    orc = (z2_oracle if name == "z2" else z3_oracle)(coeffs)
    w = omega(curve, 1, 1)
    q = PTS[1]
    assert _sym(w.evaluate([q])) == orc.omega11(_sym(q))


@pytest.mark.parametrize("name,coeffs", [("z2", (0, 1, 0, 1)), ("z3", (0, 1, 1))])
def test_omega3_against_oracles(name, coeffs, z2_rich, z3_rich):
    curve = {"z2": z2_rich, "z3": z3_rich}[name]
    orc = (z2_oracle if name == "z2" else z3_oracle)(coeffs)
    p = [_sym(v) for v in PTS[:3]]
    ours = _sym(omega(curve, 3, 0).evaluate(list(PTS[:3])))
    assert ours == orc.omega3(*p)
    assert ours == orc.omega3_closed(*p)


def test_omega3_closed_formula_on_builder(builder, builder_engine):
    x2 = builder.x.derivative().derivative()
    y1 = builder.y.derivative()
    pts = PTS[:3]
    total = Q(0)
    for bp in builder.branch_points():
        a = bp.alpha
        prod = Q(1)
        for w in pts:
            prod *= 1 / ((w - a) ** 2)
        total += prod / (x2(a) * y1(a))
    assert builder_engine.omega(3, 0).evaluate(list(pts)) == total


def test_omega4_against_oracle(z2_rich):
    orc = z2_oracle((0, 1, 0, 1))
    p = [_sym(v) for v in PTS]
    assert _sym(omega(z2_rich, 4, 0).evaluate(list(PTS))) == orc.omega4(*p)


@pytest.mark.parametrize("fixture", ["z2", "z3", "builder"])
def test_closed_form_omega11(fixture, request):
    curve = request.getfixturevalue(fixture)
    e = engine_for(curve)
    assert omega11_closed(curve, e.basis) == e.omega(1, 1)


@pytest.mark.parametrize("n,h", [(3, 0), (4, 0), (1, 1), (2, 1), (1, 2)])
def test_structure_on_z3(z3_rich, n, h):
    w = omega(z3_rich, n, h)
    rep = verify_structure(w, curve=z3_rich, n=n, h=h)
    assert rep.passed, rep.failed()


def test_structure_on_builder(builder, builder_engine):
    for n, h in [(3, 0), (1, 1), (2, 1)]:
        rep = verify_structure(builder_engine.omega(n, h), curve=builder, n=n, h=h)
        assert rep.passed, (n, h, rep.failed())


def test_symmetry_of_multipoint_correlators(z3_rich):
    w = omega(z3_rich, 3, 1)
    assert not w.symmetry_defects
    a = w.evaluate([PTS[0], PTS[1], PTS[2]])
    b = w.evaluate([PTS[2], PTS[0], PTS[1]])
    assert a == b


def test_literal_splitting_agrees_at_genus_zero(z3_rich):
    lit = RecursionEngine(z3_rich, splitting=SPLIT_LITERAL)
    full = engine_for(z3_rich)
    assert lit.omega(4, 0) == full.omega(4, 0)
    # from order two on, the literal rule drops the m = 0 and m = h products
    assert lit.omega(1, 2) != full.omega(1, 2)


def test_jobs_do_not_change_results(z3_rich):
    a = RecursionEngine(z3_rich, jobs=1).omega(2, 1)
    b = RecursionEngine(z3_rich, jobs=3).omega(2, 1)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_disk_cache_round_trip(tmp_path, z3):
    e1 = RecursionEngine(z3, cache_dir=tmp_path)
    w = e1.omega(2, 1)
    e2 = RecursionEngine(z3, cache_dir=tmp_path)
    w2 = e2.omega(2, 1)
    assert w2 == w and (2, 1) in e2.store.hits
    assert e2.orders_used[(2, 1)] == e1.orders_used[(2, 1)]


def test_corrupted_cache_is_rejected(tmp_path, z3):
    e1 = RecursionEngine(z3, cache_dir=tmp_path)
    e1.omega(1, 1)
    path = next(tmp_path.glob("*-n1-h1.json"))
    doc = json.loads(path.read_text())
    doc["fingerprint"] = "0" * 16
    path.write_text(json.dumps(doc))
    with pytest.raises(CacheMismatch):
        RecursionEngine(z3, cache_dir=tmp_path).omega(1, 1)


def test_json_round_trip(z3_rich):
    e = engine_for(z3_rich)
    w = e.omega(3, 1)
    back = MultiDifferential.from_json(json.loads(json.dumps(w.to_json())), e.basis)
    assert back == w


def test_omega_rejects_unstable():
    from cauchytr.curve import build_curve, rf_from_lists

    c = build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1]))
    with pytest.raises(ValueError):
        omega(c, 0, 0)


def test_pole_order_bound(z3_rich):
    for n, h in [(1, 1), (1, 2), (2, 1)]:
        assert omega(z3_rich, n, h).max_degree() <= 3 * h - 3 + n


@pytest.mark.slow
def test_scaling_on_builder_through_level_8(builder, builder_engine):
    scaled = RecursionEngine(builder.scaled(2))
    for n, h in levels(8):
        assert scaled.omega(n, h) == builder_engine.omega(n, h).scale(Q(2) ** (2 - 2 * h - n)), (n, h)
