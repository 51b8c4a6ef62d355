"""Two-matrix (cubic, three simple infinities) structure on a spectral curve.

Admission of the cubic shape, extraction of the potentials, total charge and
log-charges, the quadratic loop-equation oracle for computed correlators, a
builder that manufactures such curves, and the exact Bergman sheet-sum
identity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import sympy

from .algebra.factor import factor_rational
from .algebra.polynomial import Polynomial
from .algebra.ratfunc import RationalFunction
from .algebra.rational import Q, rational_str
from .algebra.series import INFINITY, laurent_expand, series_reversion
from .algebra.symmetric import sheet_sum
from .curve import SpectralCurve, implicit_equation
from .errors import (
    CuspDetected,
    DegenerateCurve,
    EliminationFailure,
    InfeasibleConstraints,
    NonSimpleBranchPoint,
    NotCauchy,
    NotCubic,
    RamifiedInfinity,
    ResidueInconsistency,
)

LABEL_ORDER = ("inf0", "inf1", "inf2")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **({"detail": self.detail} if self.detail else {})}


@dataclass
class Report:
    """A named list of checks; passes when all of them do."""

    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def add(self, name: str, ok: bool, **detail) -> None:
        self.checks.append(CheckResult(name, bool(ok), detail))

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": [c.to_json() for c in self.checks],
                **({"data": self.data} if self.data else {})}


def _rf_json(f: RationalFunction) -> dict:
    return {"numerator": [rational_str(c) for c in f.num.c], "denominator": [rational_str(c) for c in f.den.c]}


def _poles_off_zero(f: RationalFunction) -> list:
    """``[(factor coefficients, multiplicity)]`` of denominator factors other than ``X``."""
    if f.den.degree() == 0:
        return []
    _, facs = factor_rational(f.den)
    out = []
    for g, e in facs:
        if not (g.degree() == 1 and g[0] == 0):
            out.append(([rational_str(c) for c in g.c], e))
    return out


def _order_at_zero(f: RationalFunction) -> int:
    k = 0
    den = f.den
    while den.degree() > 0 and den[0] == 0:
        den = Polynomial(den.c[1:], den.var)
        k += 1
    return k


# structure -------------------------------------------------------------------------
@dataclass
class CubicStructureReport:
    three_simple_infinities: bool
    y2_coefficient_vanishes: bool
    sheet_sum_vanishes: bool
    R_hat: RationalFunction
    D: RationalFunction
    R_pole: dict
    D_pole: dict
    y2_coefficient: RationalFunction

    @property
    def consistent(self) -> bool:
        return self.y2_coefficient_vanishes == self.sheet_sum_vanishes

    @property
    def passed(self) -> bool:
        return (self.three_simple_infinities and self.y2_coefficient_vanishes and self.sheet_sum_vanishes
                and self.R_pole["ok"] and self.D_pole["ok"])

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "three_simple_infinities": self.three_simple_infinities,
            "y2_coefficient_vanishes": self.y2_coefficient_vanishes,
            "sheet_sum_vanishes": self.sheet_sum_vanishes,
            "elimination_agrees_with_sheet_sum": self.consistent,
            "y2_coefficient": _rf_json(self.y2_coefficient),
            "R_hat": {**_rf_json(self.R_hat), **self.R_pole},
            "D": {**_rf_json(self.D), **self.D_pole},
        }


def structure_check(curve: SpectralCurve) -> CubicStructureReport:
    """Read ``E = y^3 - R_hat(x) y - D(x)`` off the implicit equation and test its shape."""
    if curve.degree != 3:
        raise NotCubic(f"sheet degree is {curve.degree}, not 3")
    E = implicit_equation(curve)
    lead = E.c[3]
    X = lead.var

    def coeff(k):
        return RationalFunction(E.c[k], lead, X)

    y2 = coeff(2)
    R_hat = -coeff(1)
    D = -coeff(0)
    s = sheet_sum(curve.y, curve.x)

    def pole_data(f, bound):
        stray = _poles_off_zero(f)
        order = _order_at_zero(f)
        return {"pole_order_at_0": order, "bound": bound, "other_poles": stray,
                "ok": not stray and order <= bound}

    return CubicStructureReport(
        three_simple_infinities=curve.has_three_simple_infinities(),
        y2_coefficient_vanishes=y2.is_zero(),
        sheet_sum_vanishes=s.is_zero(),
        R_hat=R_hat,
        D=D,
        R_pole=pole_data(R_hat, 2),
        D_pole=pole_data(D, 3),
        y2_coefficient=y2,
    )


# model data ------------------------------------------------------------------------
@dataclass
class ModelData:
    """Times and charges of a two-matrix curve.

    ``times[k][j]`` is ``t_j^(k)`` for ``k = 1, 2``; ``potentials[label]`` is
    the polynomial ``P`` with ``y dx = dP(x) + c dx/x + O(dx/x^2)`` at that
    point over infinity; ``residues[label] = Res y dx``.
    """

    times: dict
    T: object
    eta1: object
    eta2: object
    potentials: dict
    residues: dict
    gauge: str

    @property
    def t_minus1(self) -> tuple:
        return (2 * self.eta1 - self.eta2, 2 * self.eta2 - self.eta1)

    @property
    def eps0(self) -> tuple:
        """Genus-zero filling fractions ``(-1)^k (T + eta^(k))``."""
        return (-(self.T + self.eta1), self.T + self.eta2)

    def degree(self, k: int) -> int:
        return max(self.times[k], default=0)

    def coordinates(self) -> list:
        """``[(direction, value)]`` for every modulus entering ``sum t_a J_a``."""
        from .energy.moduli import ModuliDirection

        out = []
        for k in (1, 2):
            for j, t in sorted(self.times[k].items()):
                out.append((ModuliDirection.potential(k, j), t))
        out.append((ModuliDirection.total_charge(), self.T))
        out.append((ModuliDirection.eta(1), self.eta1))
        out.append((ModuliDirection.eta(2), self.eta2))
        return out

    def to_json(self) -> dict:
        return {
            "times": {str(k): {str(j): rational_str(v) for j, v in sorted(self.times[k].items())} for k in (1, 2)},
            "T": rational_str(self.T),
            "eta": [rational_str(self.eta1), rational_str(self.eta2)],
            "t_minus1": [rational_str(v) for v in self.t_minus1],
            "eps0": [rational_str(v) for v in self.eps0],
            "residues": {k: rational_str(v) for k, v in self.residues.items()},
            "potentials": {k: [rational_str(c) for c in p.c] for k, p in self.potentials.items()},
            "gauge": self.gauge,
        }


def _require_cauchy_infinities(curve: SpectralCurve) -> None:
    if not curve.has_three_simple_infinities():
        raise RamifiedInfinity("two-matrix moduli need three simple rational points over x = infinity")


def potential_at(curve: SpectralCurve, point) -> tuple[Polynomial, object]:
    """``(P, c)`` with ``y = P'(x) + c/x + O(1/x^2)`` near ``point``; ``P(0) = 0``."""
    b = point.z0
    yl = laurent_expand(curve.y, b, 2)
    dy = max(0, -yl.val)
    N = dy + 4
    X = laurent_expand(curve.x, b, N)
    if X.val != -1:
        raise RamifiedInfinity("x does not have a simple pole here")
    xi = X.inverse()  # 1/x as a series in s, valuation 1
    s_of_xi = series_reversion(xi.truncate(N + 1))
    Y = laurent_expand(curve.y, b, N).truncate(2)
    y_xi = Y.compose(s_of_xi)
    top = dy
    P = [Q(0)] * (top + 2)
    for m in range(0, top + 1):
        a = y_xi.coefficient(-m)  # coefficient of x^m in y
        P[m + 1] = a / (m + 1)
    c = y_xi.coefficient(1)
    return Polynomial(P, "x"), c


def extract_model(curve: SpectralCurve) -> ModelData:
    """Potentials, ``T`` and ``eta`` of a two-matrix curve.

    With ``P_k`` the potential at ``inf_k`` (and ``P_0 + P_1 + P_2 = 0``),
    ``t_j^(1) = [x^j](-2 P_1 - P_2)`` and ``t_j^(2) = (-1)^j [x^j](P_1 + 2 P_2)``.
    The residues of ``y dx`` fix ``T + eta1``, ``T + eta2`` and ``eta2 - eta1``;
    the remaining shift ``(T + l, eta - l)`` changes nothing downstream and is
    fixed by ``curve.model_hint`` when consistent, else by ``eta1 + eta2 = 0``.
    """
    _require_cauchy_infinities(curve)
    pts = {p.label: p for p in curve.infinities}
    pots, res = {}, {}
    for lab in LABEL_ORDER:
        P, c = potential_at(curve, pts[lab])
        pots[lab] = P
        res[lab] = -c  # Res at x = infinity of c dx/x is -c
    if not (pots["inf0"] + pots["inf1"] + pots["inf2"]).is_zero():
        raise NotCauchy("the potentials at the three points over infinity do not cancel")
    total = res["inf0"] + res["inf1"] + res["inf2"]
    if not total == 0:
        raise ResidueInconsistency(f"residues of y dx over infinity sum to {total}")
    P1, P2 = pots["inf1"], pots["inf2"]
    V1 = -(P1 * 2 + P2)
    W2 = P1 + P2 * 2
    times = {1: {}, 2: {}}
    for j in range(1, max(V1.degree(), W2.degree()) + 1):
        if not V1[j] == 0:
            times[1][j] = V1[j]
        if not W2[j] == 0:
            times[2][j] = W2[j] * (-1) ** j
    r1, r2 = res["inf1"], res["inf2"]
    hint = curve.model_hint or {}
    gauge = "eta1+eta2=0"
    if {"T", "eta1", "eta2"} <= set(hint):
        T, e1, e2 = Q(hint["T"]), Q(hint["eta1"]), Q(hint["eta2"])
        if T + e1 == r1 and -(T + e2) == r2:
            gauge = "hint"
        else:
            T = None
    else:
        T = None
    if T is None:
        T = (r1 - r2) / 2
        e1 = r1 - T
        e2 = -r2 - T
    return ModelData(times, T, e1, e2, pots, res, gauge)


# loop equation ---------------------------------------------------------------------
def schwarzian(x: RationalFunction) -> RationalFunction:
    d1 = x.derivative()
    d2 = d1.derivative()
    d3 = d2.derivative()
    r = d2 / d1
    return d3 / d1 - r * r * Q(3, 2)


def loop_equation_check(curve: SpectralCurve, h: int, engine=None, *, omega11_override=None) -> Report:
    """Pole confinement of the genus-``h`` quadratic loop equation.

    With ``W_n = omega_n / (dx_1 ... dx_n)`` the sheet sum
    ``S(X) = sum_k [2 y W_1^(h) - sum_{m=1}^{h-1} W_1^(m) W_1^(h-m) - W_2^(h-1)(p,p)]``
    is a rational function of ``X`` that may have poles only at ``X = 0``.
    ``W_2^(0)(p,p)`` is the finite coincident-point value of
    ``B - dx dx/(x - x')^2`` in the uniformizer, ``-{x; z}/(6 x'^2)``, since
    ``dx dx'/(x - x')^2 = dz dz' [1/(z - z')^2 + {x; z}/6 + O(z - z')]``.
    """
    from .recursion import engine_for

    if h < 1:
        raise ValueError("loop equation check needs h >= 1")
    engine = engine or engine_for(curve)
    dx = curve.dx
    W = {}
    for m in range(1, h + 1):
        if m == 1 and omega11_override is not None:
            w = omega11_override
        else:
            w = engine.omega(1, m).to_rational_function()
        W[m] = w / dx
    if h == 1:
        W2 = schwarzian(curve.x) / (dx * dx) * Q(-1, 6)
    else:
        W2 = engine.omega(2, h - 1).diagonal() / (dx * dx)
    integrand = curve.y * W[h] * 2 - W2
    for m in range(1, h):
        integrand = integrand - W[m] * W[h - m]
    S = sheet_sum(integrand, curve.x)
    rep = Report(f"loop_equation(h={h})")
    stray = _poles_off_zero(S)
    at0 = _order_at_zero(S)
    rep.add("poles_only_at_x_0", not stray, other_poles=stray)
    rep.add("pole_order_at_0_at_most_2", at0 <= 2, order=at0)
    half = -S / 2
    q, _ = half.num.divmod(half.den)
    rep.data = {"S": _rf_json(S), "polynomial_part_degree_of_minus_S_over_2": q.degree() if not q.is_zero() else -1}
    return rep


# builder ---------------------------------------------------------------------------
def fixture_x() -> RationalFunction:
    """``x = z - 243/z + 1372/(z - 10)``, critical points ``-18, -10, 3, 45``."""
    z = RationalFunction.gen("z")
    return z - RationalFunction.constant(Q(243), "z") / z + RationalFunction.constant(Q(1372), "z") / (z - 10)


@dataclass
class BuilderSpec:
    """Ansatz for ``y``: polynomial of degree ``poly_degree`` plus poles of the given orders."""

    x: RationalFunction
    poly_degree: int
    poles: dict  # finite pole location -> order
    T: object = Q(1)
    eta1: object = Q(0)
    eta2: object = Q(0)
    seed: int = 0
    height: int = 8
    slack: int = 2
    attempts: int = 40

    @classmethod
    def fixture(cls, **kw) -> "BuilderSpec":
        return cls(fixture_x(), kw.pop("poly_degree", 2), kw.pop("poles", {Q(0): 2, Q(10): 2}), **kw)

    def to_json(self) -> dict:
        return {
            "x": _rf_json(self.x),
            "poly_degree": self.poly_degree,
            "poles": {rational_str(k): v for k, v in self.poles.items()},
            "T": rational_str(self.T), "eta1": rational_str(self.eta1), "eta2": rational_str(self.eta2),
            "seed": self.seed, "height": self.height, "slack": self.slack,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "BuilderSpec":
        x = doc.get("x")
        xf = fixture_x() if x is None else RationalFunction(
            Polynomial([Q(c) for c in x["numerator"]], "z"), Polynomial([Q(c) for c in x["denominator"]], "z"), "z")
        return cls(xf, int(doc.get("poly_degree", 2)), {Q(k): int(v) for k, v in doc.get("poles", {"0": 2, "10": 2}).items()},
                   Q(doc.get("T", 1)), Q(doc.get("eta1", 0)), Q(doc.get("eta2", 0)), int(doc.get("seed", 0)),
                   int(doc.get("height", 8)), int(doc.get("slack", 2)))


def _ansatz(spec: BuilderSpec) -> list[RationalFunction]:
    out = [RationalFunction(Polynomial.monomial(k, Q(1), "z"), None, "z") for k in range(spec.poly_degree + 1)]
    for b, order in sorted(spec.poles.items()):
        lin = Polynomial([-Q(b), Q(1)], "z")
        for m in range(1, order + 1):
            out.append(RationalFunction(Polynomial([Q(1)], "z"), lin ** m, "z"))
    return out


def residue_dz(f: RationalFunction, b):
    """Residue of ``f dz`` at ``z = b`` (``b`` may be infinity, where ``dz = -ds/s^2``)."""
    if b == INFINITY:
        return -laurent_expand(f, INFINITY, 1).coefficient(1)
    return laurent_expand(f, b, 0).coefficient(-1)


def _infinity_points(x: RationalFunction) -> list:
    """Labels of the poles of ``x``: ``infinity`` first when present, then finite poles ascending."""
    probe = SpectralCurve(x, RationalFunction.gen("z"), skip_admission=True)
    return probe, ["infinity" if p.z0 == INFINITY else rational_str(p.z0) for p in probe.infinities]


def build_cauchy_curve(spec: BuilderSpec) -> SpectralCurve:
    """Solve for ``y`` in the ansatz with vanishing sheet sum and prescribed residues.

    The three residue conditions are ``Res_inf1 y dx = T + eta1``,
    ``Res_inf2 y dx = -(T + eta2)`` (the third follows).  A seeded random point
    of the solution space is drawn; draws that fail admission are redrawn.
    """
    probe, labels = _infinity_points(spec.x)
    if not probe.has_three_simple_infinities():
        raise RamifiedInfinity("the builder needs x with three simple poles")
    basis = _ansatz(spec)
    x = spec.x
    dx = x.derivative()
    # sheet sum condition: all numerator coefficients of sum a_i S_i vanish
    sums = [sheet_sum(f, x) for f in basis]
    common = Polynomial([Q(1)], "X")
    from .algebra.polynomial import poly_gcd

    for s in sums:
        common = common * (s.den // poly_gcd(common, s.den))
    nums = [s.num * (common // s.den) for s in sums]
    width = max(p.degree() for p in nums) + 1
    rows, rhs = [], []
    for k in range(width):
        rows.append([p[k] for p in nums])
        rhs.append(Q(0))
    pts = {p.label: p for p in probe.infinities}

    def res_row(label):
        p = pts[label]
        return [residue_dz(f * dx, p.z0) for f in basis]

    rows.append(res_row("inf1"))
    rhs.append(Q(spec.T) + Q(spec.eta1))
    rows.append(res_row("inf2"))
    rhs.append(-(Q(spec.T) + Q(spec.eta2)))
    M = sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in r] for r in rows])
    bvec = sympy.Matrix([sympy.Rational(int(c.numerator), int(c.denominator)) for c in rhs])
    try:
        sol, params = M.gauss_jordan_solve(bvec)
    except ValueError as exc:
        raise InfeasibleConstraints("no y in the ansatz satisfies the constraints") from exc
    free = list(params)
    if sol.is_zero_matrix:
        raise InfeasibleConstraints("the constraints force y = 0")
    if len(free) < spec.slack:
        raise InfeasibleConstraints(f"solution space has {len(free)} free parameters, fewer than {spec.slack}")
    rng = random.Random(spec.seed)
    hint = {"T": Q(spec.T), "eta1": Q(spec.eta1), "eta2": Q(spec.eta2)}
    last = None
    for _ in range(spec.attempts):
        vals = {p: sympy.Rational(rng.randint(-spec.height, spec.height), rng.randint(1, spec.height)) for p in free}
        v = sol.subs(vals)
        coeffs = [Q(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in v]
        y = RationalFunction.constant(Q(0), "z")
        for c, f in zip(coeffs, basis):
            if not c == 0:
                y = y + f * c
        if y.is_zero():
            continue
        try:
            curve = SpectralCurve(x, y, infinity_labels=labels, model_hint=hint, label="cauchy-builder")
            implicit_equation(curve)
            if not structure_check(curve).passed:
                continue
            return curve
        except (DegenerateCurve, CuspDetected, NonSimpleBranchPoint, EliminationFailure) as exc:
            last = exc
            continue
    raise DegenerateCurve(f"no admissible curve after {spec.attempts} draws: {last}")


def fixture_curve() -> SpectralCurve:
    """The default builder curve used by the tests and demos."""
    return build_cauchy_curve(BuilderSpec.fixture())


# Bergman sheet sum -------------------------------------------------------------------
def variation_identity_check(curve: SpectralCurve, *, kernel_scale=1, samples: int | None = None) -> Report:
    """``sum_k B(q, p^(k)) = dx(q) dx(p) / (x(q) - x(p))^2`` over the sheets of ``p``.

    For fixed ``q`` both sides are rational functions of ``X = x(p)`` and are
    compared exactly.  As functions of ``q`` the difference has numerator
    degree at most ``4 n + 4`` (``n`` the larger degree of num/den of ``x``),
    so agreement at more sample points than that proves the two-variable
    identity.  ``kernel_scale`` multiplies ``B`` (negative control).  The
    corollary ``bar-omega_2(q, p^(k)) = -sum_{j != k} B(q, p^(j))`` follows by
    subtracting ``B(q, p^(k))`` from both sides and is recorded as such.
    """
    x = curve.x
    n = max(x.num.degree(), x.den.degree())
    samples = samples or 4 * n + 6
    dx = x.derivative()
    rep = Report("variation_identity")
    bad = []
    tried = 0
    q0 = 0
    X = RationalFunction.gen("X")
    while tried < samples:
        q0 += 1
        q = Q(q0 * 7 + 3, 5)
        if x.den(q) == 0 or dx.num(q) == 0:
            continue
        tried += 1
        w = RationalFunction.gen("z")
        g = RationalFunction.constant(Q(kernel_scale), "z") / ((w - q) * (w - q) * dx)
        lhs = sheet_sum(g, x)
        xq = x(q)
        rhs = RationalFunction.constant(dx(q), "X") / ((X - xq) * (X - xq))
        if not lhs == rhs:
            bad.append(rational_str(q))
    rep.add("sheet_sum_of_bergman", not bad, samples=tried, failures=bad[:5])
    rep.add("bar_omega2_corollary", not bad, derived_from="sheet_sum_of_bergman")
    return rep
