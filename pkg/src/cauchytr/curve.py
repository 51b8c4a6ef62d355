"""Genus-zero spectral curves given by a rational parametrization ``(x(z), y(z))``.

The curve exposes the data the recursion needs: the zeros of ``dx`` grouped
by irreducible factor, the local involution swapping the two sheets at each
of them, a local parameter in which ``x`` is quadratic, the points over
``x = infinity``, the Bergman kernel and a few global objects (implicit
equation, sheet sums).

Local coordinates at a zero ``alpha`` of ``dx`` are ``t = z - alpha``.  The
square-root parameter is normalized so that no square root is needed: with
``c2 = x''(alpha)/2`` we use ``u`` defined by ``x - x(alpha) = c2 * u**2`` and
``u = t + O(t**2)``.  The textbook parameter ``sqrt(x - x(alpha))`` equals
``sqrt(c2) * u``; jets in that parameter are recovered by powers of ``c2``.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Sequence

from .algebra.factor import factor_rational
from .algebra.numberfield import NumberField
from .algebra.polynomial import Polynomial, poly_gcd
from .algebra.ratfunc import RationalFunction, as_rf
from .algebra.rational import Q, Rational, rational_str
from .algebra.series import INFINITY, LaurentSeries, laurent_expand, series_reversion, series_sqrt
from .algebra.symmetric import sheet_sum
from .errors import (
    BranchPointAtInfinity,
    CuspDetected,
    DegenerateCurve,
    EliminationFailure,
    IrreducibilityFailure,
    NonSimpleBranchPoint,
)

MAX_FACTOR_DEGREE = 8


def rf_from_lists(num: Sequence, den: Sequence = (1,), var: str = "z") -> RationalFunction:
    return RationalFunction(Polynomial([Q(c) for c in num], var), Polynomial([Q(c) for c in den], var), var)


def evaluate(f: RationalFunction, value):
    """Value of a rational-coefficient function at a rational or number-field point."""
    den = f.den(value)
    if den == 0:
        raise ZeroDivisionError("evaluation at a pole")
    return f.num(value) / den


@dataclass(frozen=True)
class InfinityPoint:
    """A point over ``x = infinity``: a pole of ``x(z)``."""

    z0: object  # rational, NFElement (generic root of ``factor``) or INFINITY
    ramification: int
    factor: Polynomial | None
    y_local: LaurentSeries
    label: str = ""

    @property
    def is_finite(self) -> bool:
        return self.z0 != INFINITY

    @property
    def is_rational(self) -> bool:
        return self.z0 == INFINITY or isinstance(self.z0, Rational)

    def describe(self) -> dict:
        z0 = "infinity" if self.z0 == INFINITY else (rational_str(self.z0) if isinstance(self.z0, Rational) else str(self.factor))
        return {"z0": z0, "ramification": self.ramification, "label": self.label,
                "y_pole_order": max(0, -self.y_local.val)}


@dataclass
class BranchPointData:
    """Local data at the zeros of one irreducible factor of the ``dx`` numerator.

    ``alpha`` is a rational when the factor is linear, otherwise the generator
    of the number field cut out by the factor; every statement about
    ``alpha`` then holds simultaneously at all conjugate zeros.
    """

    factor: Polynomial
    field: NumberField
    alpha: object
    a: object  # critical value x(alpha)
    order: int
    involution: LaurentSeries  # s(t) with sigma(alpha + t) = alpha + s(t)
    zeta: LaurentSeries  # u(t), normalized square-root parameter
    zeta_inverse: LaurentSeries  # t(u)
    scale_sq: object  # c2 = x''(alpha)/2; sqrt(x - a) = sqrt(c2) * u
    y_jet: tuple  # y, dy/du, d2y/du2, d3y/du3 at u = 0

    @property
    def count(self) -> int:
        """Number of conjugate zeros represented."""
        return self.factor.degree()

    @property
    def is_rational(self) -> bool:
        return self.factor.degree() == 1

    def trace(self, value) -> Rational:
        return self.field.trace(value)

    def describe(self) -> dict:
        def show(v):
            return rational_str(v) if isinstance(v, Rational) else str(v)

        return {
            "factor": [rational_str(c) for c in self.factor.c],
            "alpha": show(self.alpha),
            "critical_value": show(self.a),
            "dy_du": show(self.y_jet[1]),
        }


def branch_point_data(x: RationalFunction, y: RationalFunction, factor: Polynomial, order: int) -> BranchPointData:
    """Build the involution and local parameter at the zeros of ``factor``."""
    if factor.degree() == 1:
        field = NumberField(factor, check=False)
        alpha = -factor[0] / factor[1]
    else:
        field = NumberField(factor, check=False)
        alpha = field.gen
    a = evaluate(x, alpha)
    N = order
    X = laurent_expand(x, alpha, N + 2) - a  # valuation 2
    if X.val != 2:
        raise NonSimpleBranchPoint("dx vanishes to higher order")
    c2 = X.leading()
    rho = X.shift(-2) / c2  # 1 + O(t)
    u = series_sqrt(rho).shift(1)  # t * sqrt(rho), exact to t^(N+1)
    tu = series_reversion(u)
    sigma = tu.compose(-u)
    yl = laurent_expand(y, alpha, N + 1)
    if yl.val < 0:
        raise DegenerateCurve("y has a pole at a zero of dx")
    yu = yl.compose(tu)
    jet = []
    fact = 1
    for k in range(4):
        if k:
            fact *= k
        jet.append(yu.coefficient(k) * fact)
    if jet[1] == 0:
        raise CuspDetected(f"dy vanishes at the zero of dx given by {factor}")
    return BranchPointData(factor, field, alpha, a, N, sigma, u, tu, c2, tuple(jet))


class SpectralCurve:
    """Genus-zero curve ``(x(z), y(z))`` with its branch and infinity data."""

    def __init__(self, x, y, *, order: int = 12, base_point=None, label: str = "",
                 infinity_labels: Sequence | None = None, skip_admission: bool = False,
                 model_hint: dict | None = None):
        x = as_rf(x)
        y = as_rf(y)
        if x.is_constant():
            raise DegenerateCurve("x is constant")
        self.x = x
        self.y = y
        self.label = label
        self.model_hint = model_hint
        self.degree = x.degree()
        if self.degree < 2:
            raise DegenerateCurve("sheet degree must be at least two")
        dx = x.derivative()
        self.dx = dx
        self.dx_numerator = dx.num.monic()
        self.skip_admission = skip_admission
        self._check_infinite_branching()
        lc, facs = factor_rational(self.dx_numerator)
        groups = []
        for f, e in facs:
            if e > 1:
                raise NonSimpleBranchPoint(f"dx has a zero of order {e} at the roots of {f}")
            if f.degree() > MAX_FACTOR_DEGREE:
                raise IrreducibilityFailure(f"factor of degree {f.degree()} exceeds the supported degree")
            groups.append(f)
        self.branch_factors = tuple(groups)
        self.default_order = order
        self._branch_cache: dict[int, list[BranchPointData]] = {}
        self.infinities = self._find_infinities(infinity_labels)
        if not skip_admission:
            self._admit()
        self.base_point = Q(base_point) if base_point is not None else self._default_base_point()

    # admission -----------------------------------------------------------
    def _check_infinite_branching(self) -> None:
        x = self.x
        d = self.degree
        expected = 2 * d - 2
        # ramification at poles of x
        _, den_facs = factor_rational(x.den) if x.den.degree() > 0 else (1, [])
        for f, e in den_facs:
            expected -= (e - 1) * f.degree()
        dn, dd = x.num.degree(), x.den.degree()
        if dn > dd:
            expected -= dn - dd - 1
        finite = self.dx_numerator.degree()
        if finite < expected:
            raise BranchPointAtInfinity("x has a critical point at z = infinity")

    def _admit(self) -> None:
        y = self.y
        for f in self.branch_factors:
            if f.degree() == 1:
                alpha = -f[0] / f[1]
            else:
                alpha = NumberField(f, check=False).gen
            if y.den(alpha) == 0:
                raise DegenerateCurve("y has a pole at a zero of dx")
            dy = y.derivative()
            if evaluate(dy, alpha) == 0:
                raise CuspDetected(f"dy and dx vanish together at the roots of {f}")

    def _find_infinities(self, labels) -> list[InfinityPoint]:
        x, y = self.x, self.y
        pts = []
        dn, dd = x.num.degree(), x.den.degree()
        if dn > dd:
            pts.append(InfinityPoint(INFINITY, dn - dd, None, laurent_expand(y, INFINITY, 2)))
        if x.den.degree() > 0:
            _, facs = factor_rational(x.den)
            for f, e in facs:
                if f.degree() == 1:
                    z0 = -f[0]
                    pts.append(InfinityPoint(z0, e, f, laurent_expand(y, z0, 2)))
                else:
                    gen = NumberField(f, check=False).gen
                    pts.append(InfinityPoint(gen, e, f, laurent_expand(y, gen, 2)))
        # finite rational points in ascending order after z = infinity
        def key(p):
            if p.z0 == INFINITY:
                return (0, 0)
            if isinstance(p.z0, Rational):
                return (1, p.z0)
            return (2, 0)

        pts.sort(key=key)
        if labels is not None:
            wanted = [INFINITY if str(l) == "infinity" else Q(l) for l in labels]
            by = {p.z0: p for p in pts if p.is_rational}
            if sorted(map(str, wanted)) != sorted(map(str, by)):
                raise DegenerateCurve("infinity labels do not match the poles of x")
            pts = [by[w] for w in wanted]
        return [InfinityPoint(p.z0, p.ramification, p.factor, p.y_local, f"inf{i}") for i, p in enumerate(pts)]

    def _default_base_point(self) -> Rational:
        k = 0
        while True:
            o = Q(k)
            if self.is_regular_point(o):
                return o
            k += 1

    def is_regular_point(self, o) -> bool:
        o = Q(o)
        if self.x.den(o) == 0 or self.y.den(o) == 0:
            return False
        if self.dx_numerator(o) == 0:
            return False
        ydx = self.ydx()
        return not ydx.den(o) == 0

    # derived objects -------------------------------------------------------
    def ydx(self) -> RationalFunction:
        """``y * dx/dz``: the coefficient of ``dz`` in ``y dx``."""
        return self.y * self.dx

    def sheet_count(self) -> int:
        return sum(p.ramification * (p.factor.degree() if p.factor is not None else 1) for p in self.infinities)

    def branch_points(self, order: int | None = None) -> list[BranchPointData]:
        order = order or self.default_order
        if order not in self._branch_cache:
            self._branch_cache[order] = [branch_point_data(self.x, self.y, f, order) for f in self.branch_factors]
        return self._branch_cache[order]

    def has_three_simple_infinities(self) -> bool:
        return (len(self.infinities) == 3 and all(p.ramification == 1 and p.is_rational for p in self.infinities))

    def infinity(self, label: str) -> InfinityPoint:
        for p in self.infinities:
            if p.label == label:
                return p
        raise KeyError(label)

    def scaled(self, kappa) -> "SpectralCurve":
        """The same curve with ``y`` replaced by ``kappa * y``."""
        kappa = Q(kappa)
        hint = None
        if self.model_hint:
            hint = {k: Q(v) * kappa for k, v in self.model_hint.items()}
        return SpectralCurve(self.x, self.y * kappa, order=self.default_order, base_point=self.base_point,
                             label=self.label, infinity_labels=self._labels_for_copy(), model_hint=hint,
                             skip_admission=self.skip_admission)

    def with_y(self, y, *, skip_admission: bool = True, model_hint=None) -> "SpectralCurve":
        return SpectralCurve(self.x, y, order=self.default_order, base_point=self.base_point, label=self.label,
                             infinity_labels=self._labels_for_copy(), skip_admission=skip_admission,
                             model_hint=model_hint)

    def with_base_point(self, o) -> "SpectralCurve":
        return SpectralCurve(self.x, self.y, order=self.default_order, base_point=o, label=self.label,
                             infinity_labels=self._labels_for_copy(), model_hint=self.model_hint,
                             skip_admission=self.skip_admission)

    def _labels_for_copy(self):
        if all(p.is_rational for p in self.infinities):
            return ["infinity" if p.z0 == INFINITY else rational_str(p.z0) for p in self.infinities]
        return None

    # identity ----------------------------------------------------------------
    def spec_dict(self) -> dict:
        d = {
            "x": {"numerator": [rational_str(c) for c in self.x.num.c],
                  "denominator": [rational_str(c) for c in self.x.den.c]},
            "y": {"numerator": [rational_str(c) for c in self.y.num.c],
                  "denominator": [rational_str(c) for c in self.y.den.c]},
        }
        return d

    @property
    def fingerprint(self) -> str:
        payload = json.dumps(self.spec_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self) -> str:
        return f"SpectralCurve(x={self.x}, y={self.y})"


def build_curve(x, y, order: int = 12, **kwargs) -> SpectralCurve:
    return SpectralCurve(x, y, order=order, **kwargs)


def local_involution(curve: SpectralCurve, index: int, order: int) -> LaurentSeries:
    """Series ``s(t)`` with ``sigma(alpha + t) = alpha + s(t)`` at the ``index``-th factor."""
    return curve.branch_points(order)[index].involution


def infinities(curve: SpectralCurve) -> list[InfinityPoint]:
    return list(curve.infinities)


# kernels -----------------------------------------------------------------------
def bergmann(p, q):
    """Coefficient of ``dp dq`` in the Bergman kernel: ``1/(p - q)**2``."""
    return 1 / ((p - q) * (p - q))


def bergmann_rf(var_p: str = "p", var_q: str = "q") -> RationalFunction:
    """``B(p, q)`` as a rational function of ``q`` with coefficients in ``Q(p)``."""
    p = RationalFunction.gen(var_p)
    c = [p * p, p * (-2), RationalFunction.constant(1, var_p)]
    den = Polynomial(c, var_q)
    return RationalFunction(Polynomial([RationalFunction.constant(1, var_p)], var_q), den, var_q)


def dS_kernel(curve: SpectralCurve, index: int, order: int, var_q: str = "q") -> LaurentSeries:
    """``1/(q - p(t)) - 1/(q - sigma(p(t)))`` at ``p(t) = alpha + t``, as a series in ``t``.

    The coefficients are rational functions of ``q`` over the field of alpha;
    coefficient ``k`` equals ``(t^k - s(t)^k)`` summed against ``(q - alpha)^-(k+1)``.
    """
    bp = curve.branch_points(order + 2)[index]
    s = bp.involution.truncate(order)
    alpha = bp.alpha
    qa = Polynomial([-alpha, 1], var_q) if isinstance(alpha, Rational) else Polynomial([-alpha, alpha * 0 + 1], var_q)
    total = LaurentSeries.zero(order)
    t = LaurentSeries([1], 1, order)
    tk, sk = t, s
    for k in range(1, order + 1):
        coef = RationalFunction(Polynomial([alpha * 0 + 1], var_q), qa ** (k + 1), var_q)
        total = total + (tk - sk) * coef
        tk = (tk * t).truncate(order)
        sk = (sk * s).truncate(order)
    return total


# implicit equation ----------------------------------------------------------------
def implicit_equation(curve: SpectralCurve) -> Polynomial:
    """Irreducible ``E(X, Y)`` with ``E(x(z), y(z)) = 0``, as a polynomial in ``Y``
    whose coefficients are polynomials in ``X``."""
    x, y = curve.x, curve.y
    d = curve.degree
    power = [None] + [sheet_sum(y ** k, x) for k in range(1, d + 1)]
    e = [RationalFunction.constant(1, "X")]
    for k in range(1, d + 1):
        acc = RationalFunction.constant(0, "X")
        for i in range(1, k + 1):
            term = e[k - i] * power[i]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc * Q(1, k))
    # prod (Y - y_i) = sum (-1)^k e_k Y^(d-k)
    coeffs = [None] * (d + 1)
    for k in range(d + 1):
        coeffs[d - k] = e[k] if k % 2 == 0 else -e[k]
    common = Polynomial([1], "X")
    for c in coeffs:
        common = common * (c.den // poly_gcd(common, c.den))
    polys = [(c.num * (common // c.den)) for c in coeffs]
    # remove rational content
    content = None
    for p in polys:
        for c in p.c:
            content = abs(c) if content is None else _qgcd(content, c)
    lead = polys[-1].lc()
    scale = Q(1) / content if content else Q(1)
    if lead < 0:
        scale = -scale
    E = Polynomial([p * scale for p in polys], "Y")
    _check_birational(E, d)
    return E


def _qgcd(a, b):
    import math

    a, b = Q(a), Q(b)
    num = math.gcd(int(a.numerator), int(b.numerator))
    den = math.lcm(int(a.denominator), int(b.denominator))
    return Q(num, den)


def _check_birational(E: Polynomial, d: int) -> None:
    rng = random.Random(1729)
    for _ in range(4):
        X0 = Q(rng.randint(-97, 97), rng.randint(1, 13))
        spec = Polynomial([c(X0) for c in E.c], "Y")
        if spec.degree() != d:
            continue
        if poly_gcd(spec, spec.derivative()).degree() == 0:
            return
    raise EliminationFailure("y does not separate the sheets: the parametrization is not birational")


def evaluate_implicit(E: Polynomial, X, Y):
    total = 0
    for k, c in enumerate(E.c):
        total = total + c(X) * (Y ** k)
    return total
