"""Acceptance run: one PASS/FAIL line per criterion, with its tolerance and runtime.

Each criterion builds fresh engines so that its runtime includes every
correlator it needs.  Run with ``pytest -s tests/test_acceptance.py`` to see
the lines as they are produced; they are also collected in the terminal
summary.
"""

from __future__ import annotations

import json
import time

import pytest
from click.testing import CliRunner

from cauchytr.algebra.rational import Q
from cauchytr.cauchy import (
    BuilderSpec,
    build_cauchy_curve,
    extract_model,
    fixture_curve,
    loop_equation_check,
    variation_identity_check,
)
from cauchytr.cli.main import cli
from cauchytr.curve import build_curve, rf_from_lists
from cauchytr.energy.hop import H_apply, _compare, dilaton_check, free_energy_h, homogeneity_check
from cauchytr.energy.moduli import f0_finite_difference, f1_gradient, ydx_decomposition_check
from cauchytr.energy.moduli import ModuliDirection
from cauchytr.recursion import RecursionEngine, omega11_closed
from cauchytr.algebra.ratfunc import RationalFunction
from cauchytr.cli.suites import directions, levels

LINES: list = []


def report(tag: str, title: str, ok: bool, tolerance: str, seconds: float, budget: float, detail: str = ""):
    in_time = seconds <= budget
    status = "PASS" if ok and in_time else "FAIL"
    line = (f"[criterion {tag}] {status}: {title} | tolerance {tolerance} | "
            f"{seconds:.1f}s of {budget:.0f}s budget" + (f" | {detail}" if detail else ""))
    if ok and not in_time:
        line += " | identity holds but runtime over budget"
    LINES.append(line)
    print(line)
    return ok and in_time


def fresh(curve):
    return RecursionEngine(curve)


@pytest.fixture(scope="module")
def curves():
    return {
        "z2": build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1])),
        "z3": build_curve(rf_from_lists([0, -3, 0, 1]), rf_from_lists([0, 1])),
        "builder": fixture_curve(),
        "z2_rich": build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1, 0, 1])),
        "z3_rich": build_curve(rf_from_lists([0, -3, 0, 1]), rf_from_lists([0, 1, 1])),
    }


def test_c01_sheet_sum_kernel(curves):
    t0 = time.time()
    reps = [variation_identity_check(curves[k]) for k in ("z3", "builder")]
    ok = all(r.passed for r in reps)
    assert report("1", "sheet sum of the Bergman kernel equals dx dx/(x - x)^2 on z^3-3z and the builder curve",
                  ok, "exact (zero difference)", time.time() - t0, 1)


def test_c02_closed_form_omega11(curves):
    t0 = time.time()
    ok = True
    for k in ("z2", "z3", "builder"):
        e = fresh(curves[k])
        ok &= omega11_closed(curves[k], e.basis) == e.omega(1, 1)
    assert report("2", "closed-form omega_1^(1) equals the recursion on the three fixture curves", ok,
                  "exact", time.time() - t0, 10)


def test_c03_loop_equation(curves):
    c = curves["builder"]
    t0 = time.time()
    e = fresh(c)
    reps = {h: loop_equation_check(c, h, e) for h in (1, 2)}
    w = e.omega(1, 1).to_rational_function("z")
    z = RationalFunction.gen("z")
    bump = RationalFunction.constant(Q(1, 1000), "z") / ((z - 3) ** 4)
    control = loop_equation_check(c, 1, e, omega11_override=w + bump)
    ok = all(r.passed for r in reps.values()) and not control.passed
    detail = ", ".join(f"h={h}: {'ok' if r.passed else r.failed()}" for h, r in reps.items())
    detail += f", perturbed control {'rejected' if not control.passed else 'ACCEPTED'}"
    assert report("3", "quadratic loop equation on the builder curve has poles only at x = 0 (h = 1, 2)", ok,
                  "exact", time.time() - t0, 120, detail)


def _dilaton_all(curves, sign: int):
    bad = []
    for k in ("z2", "builder"):
        e = fresh(curves[k])
        for n, h in levels(6):
            if sign == 1:
                rep = dilaton_check(curves[k], n, h, engine=e)
            else:
                lhs = e.omega(n, h).scale(2 - n - 2 * h)
                rep = _compare(f"dilaton({n},{h})", lhs, H_apply(curves[k], e.omega(n + 1, h)))
            if not rep.passed:
                bad.append((k, n, h, rep.detail.get("uniform_ratio")))
    return bad


def test_c04_dilaton(curves):
    """The identity as stated: (2 - n - 2h) omega_n = -H omega_{n+1}.

    With the minus-sign recursion kernel used throughout, this fails by an
    overall factor -1 at every (n, h); the next test checks the negated form.
    """
    t0 = time.time()
    bad = _dilaton_all(curves, 1)
    ratios = sorted({str(r) for *_, r in bad})
    ok = report("4", "dilaton identity (2-n-2h) omega_n^(h) = -H omega_(n+1)^(h), 2h+n <= 6, z^2 and builder",
                not bad, "exact", time.time() - t0, 300,
                f"{len(bad)} of {2 * len(levels(6))} cases fail; ratios rhs/lhs: {ratios}" if bad else "")
    assert ok


def test_c04b_dilaton_sign_corrected(curves):
    t0 = time.time()
    bad = _dilaton_all(curves, -1)
    assert report("4b", "dilaton identity with the right side negated, (2-n-2h) omega_n^(h) = H omega_(n+1)^(h)",
                  not bad, "exact", time.time() - t0, 300, f"failures: {bad}" if bad else "")


def test_c05_homogeneity(curves):
    t0 = time.time()
    ok = True
    notes = []
    c = curves["z2_rich"]
    for h in (2, 3):
        for kappa in (2, 3):
            rep = homogeneity_check(c, h, kappa)
            ok &= rep.passed
            notes.append(f"F{h}(k={kappa}) {'ok' if rep.passed else 'FAIL'}")
    # every small fixture curve through 2h + n <= 8; the builder curve through 7 to fit the budget
    # (its level-8 scaling runs in tests/test_recursion.py, marked slow)
    for k, top in (("z2", 8), ("z3", 8), ("z2_rich", 8), ("z3_rich", 8), ("builder", 7)):
        base = fresh(curves[k])
        for kappa in (2, 3):
            sc = fresh(curves[k].scaled(kappa))
            for n, h in levels(top):
                same = sc.omega(n, h) == base.omega(n, h).scale(Q(kappa) ** (2 - 2 * h - n))
                ok &= same
                if not same:
                    notes.append(f"omega({n},{h}) k={kappa} on {k} FAIL")
        notes.append(f"omega on {k} to level {top}")
    assert report("5", "F^(h) scales by kappa^(2-2h) (h = 2, 3) and omega_n^(h) by kappa^(2-2h-n), kappa in {2,3}",
                  ok, "exact", time.time() - t0, 300, "; ".join(notes))


def test_c06_f1_gradient(curves):
    c = curves["builder"]
    t0 = time.time()
    e = fresh(c)
    model = extract_model(c)
    dirs = directions(c, model)
    res = [f1_gradient(c, d, e) for d in dirs]
    bad = [r["direction"] for r in res if not r["agree"]]
    assert report("6", "gradient of F^(1): -J_a(omega_1^(1)) equals the branch-point assembly, every direction",
                  not bad, "exact", time.time() - t0, 120,
                  f"directions {[d.name() for d in dirs]}" + (f"; disagree: {bad}" if bad else ""))


def test_c07_ydx_decomposition():
    t0 = time.time()
    ok = True
    notes = []
    for spec in (BuilderSpec.fixture(), BuilderSpec.fixture(T=Q(3, 2), eta1=Q(1, 3), eta2=Q(-1, 5), seed=4)):
        c = build_cauchy_curve(spec)
        m = extract_model(c)
        round_trip = (m.T, m.eta1, m.eta2) == (spec.T, spec.eta1, spec.eta2)
        dec = ydx_decomposition_check(c, m).passed
        ok &= round_trip and dec
        notes.append(f"T={spec.T}, eta=({spec.eta1},{spec.eta2}): round trip {round_trip}, decomposition {dec}")
    assert report("7", "sum_a t_a J_a(B) = y dx; extract_model inverts the builder", ok, "exact",
                  time.time() - t0, 60, "; ".join(notes))


def test_c08_f0_gradient(curves):
    c = curves["builder"]
    t0 = time.time()
    worst = 0.0
    for name in ("T", "t1_1"):
        est, exact = f0_finite_difference(c, ModuliDirection.parse(name))
        worst = max(worst, float(abs(est - exact) / abs(exact)))
    assert report("8", "Richardson finite difference of F^(0) matches J_a(y dx) along T and t_1^(1)",
                  worst < 1e-6, "relative 1e-6", time.time() - t0, 120, f"worst relative error {worst:.2e}")


def test_c09_base_point(curves):
    c = curves["builder"]
    t0 = time.time()
    e = fresh(c)
    o1, o2 = c.base_point, Q(7, 3)
    c2 = c.with_base_point(o2)
    ok = free_energy_h(c, 2, o1, engine=e) == free_energy_h(c, 2, o2, engine=e)
    for n, h in [(2, 0), (3, 0), (4, 0), (5, 0), (2, 1), (3, 1), (1, 2)]:
        a, b = H_apply(c, e.omega(n, h)), H_apply(c2, e.omega(n, h))
        ok &= (a - b).is_zero() if isinstance(a, RationalFunction) else a == b
    assert report("9", "F^(2) and H applied to correlators are the same for base points 1 and 7/3", ok, "exact",
                  time.time() - t0, 60)


def test_c10_determinism(curves):
    t0 = time.time()
    runner = CliRunner()

    def out(*args):
        r = runner.invoke(cli, list(args))
        doc = json.loads(r.stdout)
        doc.pop("execution")
        return r.exit_code, json.dumps(doc, sort_keys=True)

    om = [out("omega", "builder", "2", "1", "--jobs", j) for j in ("1", "4", "1")]
    ver = [out("verify", "builder", "--suite", "structure", "--suite", "loop", "--max-level", "4", "--jobs", j)
           for j in ("1", "4", "1")]
    ok = len({o for _, o in om}) == 1 and len({v for _, v in ver}) == 1 and all(c == 0 for c, _ in om + ver)
    assert report("10", "omega and verify outputs byte-identical across --jobs 1/4 and repeated runs", ok,
                  "byte-identical (execution block excluded)", time.time() - t0, 300)
