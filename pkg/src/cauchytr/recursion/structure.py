"""Structural checks on computed correlators.

Multi-point correlators are tested on one-variable slices: all variables but
the first are frozen at seeded random rationals, leaving a rational function
of one variable whose poles, residues, behaviour at the points over
``x = infinity`` and parity under the local involutions can be read off
exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

from ..algebra.polynomial import poly_gcd, squarefree_part
from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q, rational_str
from ..algebra.series import INFINITY, laurent_expand
from .multidiff import KIND_XI, MultiDifferential, distinct_permutations


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **({"detail": self.detail} if self.detail else {})}


@dataclass
class StructureReport:
    n: int
    h: int
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "warnings": list(self.warnings),
        }


def _random_point(rng: random.Random, avoid) -> object:
    while True:
        p = Q(rng.randint(-40, 40), rng.randint(1, 9))
        if not avoid(p):
            return p


def slice_of(omega: MultiDifferential, frozen: list, var: str = "z") -> RationalFunction:
    """``omega(z, p_2, ..., p_n)`` as a rational function of ``z``."""
    basis = omega.basis
    out = RationalFunction.constant(Q(0), var)
    by_label: dict = {}
    for key, c in omega.data.items():
        for perm in distinct_permutations(key):
            w = c
            for lab, p in zip(perm[1:], frozen):
                w = w * basis.value(lab, p)
            if not w == 0:
                by_label[perm[0]] = by_label.get(perm[0], Q(0)) + w
    for lab in sorted(by_label):
        out = out + basis.rf(lab, var) * by_label[lab]
    return out


def check_univariate(f: RationalFunction, curve, report: StructureReport, where: str = "") -> None:
    """Pole location, residues, decay and involution parity of one slice."""
    branch = curve.dx_numerator.with_var(f.var)
    den = f.den
    sq = squarefree_part(den) if den.degree() > 0 else den
    extra = sq // poly_gcd(sq, branch) if sq.degree() > 0 else sq
    ok = extra.degree() == 0
    report.checks.append(Check("poles_at_branch_points", ok, {} if ok else {
        "slice": where, "stray_factor": [rational_str(c) for c in extra.c]}))

    bad_res = []
    bad_parity = []
    order = max(curve.default_order, 2 * den.degree() + 6)
    for bp in curve.branch_points(order):
        loc = laurent_expand(f, bp.alpha, order)
        r = loc.coefficient(-1)
        if not r == 0:
            bad_res.append({"slice": where, "factor": [rational_str(c) for c in bp.factor.c], "residue": str(r)})
        pulled = loc.compose(bp.involution.truncate(order)) * bp.involution.derivative().truncate(order - 1)
        total = loc + pulled
        top = min(total.order, -1)
        if any(not total.coefficient(k) == 0 for k in range(total.val, top + 1) if k < 0):
            bad_parity.append({"slice": where, "factor": [rational_str(c) for c in bp.factor.c]})
    report.checks.append(Check("zero_residues", not bad_res, {"failures": bad_res} if bad_res else {}))
    report.checks.append(Check("odd_under_involution", not bad_parity, {"failures": bad_parity} if bad_parity else {}))

    bad_inf = []
    # dz has a double pole at z = infinity, so decay O(z^-2) is needed whether or not it lies over x = infinity
    if not f.is_zero() and f.order_at_infinity() < 2:
        bad_inf.append({"slice": where, "point": "z=infinity", "order": f.order_at_infinity()})
    for p in curve.infinities:
        if p.z0 == INFINITY:
            continue
        if p.factor is not None and p.factor.degree() > 1:
            if poly_gcd(f.den, p.factor.with_var(f.var)).degree() > 0:
                bad_inf.append({"slice": where, "point": str(p.factor)})
        elif f.den(p.z0) == 0:
            bad_inf.append({"slice": where, "point": rational_str(p.z0)})
    report.checks.append(Check("regular_over_x_infinity", not bad_inf, {"failures": bad_inf} if bad_inf else {}))


def verify_structure(omega, *, curve=None, n: int = 1, h: int = 1, slices: int = 2, seed: int = 0) -> StructureReport:
    """Symmetry, pole confinement, zero residues and decay of a correlator.

    ``omega`` is a :class:`MultiDifferential` or, for one-point data, a plain
    rational function in the uniformizer (useful for hand-made perturbations).
    """
    if isinstance(omega, RationalFunction):
        if curve is None:
            raise ValueError("a curve is required for a bare rational function")
        report = StructureReport(n, h)
        check_univariate(omega, curve, report)
        _pole_bound(report, omega.den, curve, n, h)
        return report
    if omega.kind != KIND_XI:
        raise ValueError("base correlators are not subject to the structural checks")
    curve = omega.curve
    report = StructureReport(omega.n, omega.h)
    defects = omega.symmetry_defects
    report.checks.append(Check("symmetry_of_recursion_output", not defects,
                               {"first": _defect_json(defects[0]), "count": len(defects)} if defects else {}))
    rng = random.Random(seed)
    crit = curve.dx_numerator

    def avoid(p):
        return crit(p) == 0 or any(q.z0 == p for q in curve.infinities)

    if omega.n == 1:
        check_univariate(omega.to_rational_function(), curve, report)
    else:
        perm_ok = True
        perm_detail = {}
        for s in range(slices):
            pts = [_random_point(rng, avoid) for _ in range(omega.n)]
            f = slice_of(omega, pts[1:])
            check_univariate(f, curve, report, where=",".join(rational_str(p) for p in pts[1:]))
            if omega.n <= 4:
                base = omega.evaluate(pts)
                for perm in permutations(range(omega.n)):
                    v = omega.evaluate([pts[i] for i in perm])
                    if not v == base:
                        perm_ok, perm_detail = False, {"points": [rational_str(p) for p in pts], "perm": list(perm)}
                        break
        report.checks.append(Check("permutation_symmetry", perm_ok, perm_detail))
    _merge_checks(report)
    bound = 6 * omega.h + 2 * omega.n - 4
    if omega.data and omega.max_pole_order() > bound:
        report.warnings.append(f"pole order {omega.max_pole_order()} exceeds {bound}")
    report.warnings.extend(omega.warnings)
    return report


def _pole_bound(report, den, curve, n, h) -> None:
    from ..algebra.factor import factor_rational

    bound = 6 * h + 2 * n - 4
    if den.degree() > 0:
        _, facs = factor_rational(den)
        worst = max(e for _, e in facs)
        if worst > bound:
            report.warnings.append(f"pole order {worst} exceeds {bound}")


def _merge_checks(report: StructureReport) -> None:
    """Collapse repeated checks from several slices into one entry each."""
    merged: dict = {}
    order = []
    for c in report.checks:
        if c.name not in merged:
            merged[c.name] = Check(c.name, c.passed, dict(c.detail))
            order.append(c.name)
        elif not c.passed and merged[c.name].passed:
            merged[c.name] = Check(c.name, False, dict(c.detail))
    report.checks = [merged[k] for k in order]


def _defect_json(d) -> dict:
    S, l1, l2, v1, v2 = d
    return {"term": [list(x) for x in S], "labels": [list(l1), list(l2)], "values": [str(v1), str(v2)]}
