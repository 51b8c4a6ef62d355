"""Moduli directions of the two-matrix curve and the operators ``J_a``.

Points over ``x = infinity`` carry the labels ``inf0`` (sheet 0), ``inf1`` and
``inf2``.  For a differential ``phi``:

* potential time ``t_j^(1)``: ``(2/3) Res_inf1 x^j phi - (1/3) (Res_inf0 + Res_inf2) x^j phi``
* potential time ``t_j^(2)``: ``-(2/3) Res_inf2 (-x)^j phi + (1/3) (Res_inf0 + Res_inf1) (-x)^j phi``
* total charge ``T``: regularized integral from ``inf2`` to ``inf1``
* ``eta^(1)``: from ``inf0`` to ``inf1``; ``eta^(2)``: from ``inf2`` to ``inf0``

so that ``y dx = sum_a t_a J_a(B(., p))``.  Regularization removes the
polynomial-in-``x`` and ``ln x`` parts of the primitive at each endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q
from ..algebra.series import INFINITY, laurent_expand
from ..errors import RamifiedInfinity, UnsupportedDirection
from .logvalue import LogValue
from .primitive import Primitive

KIND_POTENTIAL = "potential"
KIND_T = "T"
KIND_ETA = "eta"
KIND_TM1 = "t_minus1"
KIND_EPS = "eps"

# integration rows: (upper endpoint, lower endpoint)
_INTEGRAL_ENDS = {KIND_T: ("inf1", "inf2"), (KIND_ETA, 1): ("inf1", "inf0"), (KIND_ETA, 2): ("inf0", "inf2")}


@dataclass(frozen=True)
class ModuliDirection:
    kind: str
    k: int = 0
    j: int = 0

    @classmethod
    def potential(cls, k: int, j: int) -> "ModuliDirection":
        if k not in (1, 2) or j < 1:
            raise ValueError("potential times are t_j^(k) with k in {1, 2} and j >= 1")
        return cls(KIND_POTENTIAL, k, j)

    @classmethod
    def total_charge(cls) -> "ModuliDirection":
        return cls(KIND_T)

    @classmethod
    def eta(cls, k: int) -> "ModuliDirection":
        if k not in (1, 2):
            raise ValueError("eta^(k) needs k in {1, 2}")
        return cls(KIND_ETA, k)

    @classmethod
    def log_charge(cls, k: int) -> "ModuliDirection":
        if k not in (1, 2):
            raise ValueError("t_-1^(k) needs k in {1, 2}")
        return cls(KIND_TM1, k)

    @classmethod
    def filling_fraction(cls, k: int) -> "ModuliDirection":
        return cls(KIND_EPS, k)

    @classmethod
    def parse(cls, text: str) -> "ModuliDirection":
        """``T``, ``eta1``, ``eta2``, ``tm1_1``, ``tm1_2``, ``t1_3`` (``t_3^(1)``), ``eps1``..."""
        s = text.strip()
        if s == "T":
            return cls.total_charge()
        if s.startswith("eta"):
            return cls.eta(int(s[3:]))
        if s.startswith("tm1_"):
            return cls.log_charge(int(s[4:]))
        if s.startswith("eps"):
            return cls.filling_fraction(int(s[3:] or 0))
        if s.startswith("t") and "_" in s:
            k, j = s[1:].split("_")
            return cls.potential(int(k), int(j))
        raise ValueError(f"unknown direction {text!r}")

    def name(self) -> str:
        if self.kind == KIND_POTENTIAL:
            return f"t{self.k}_{self.j}"
        if self.kind == KIND_T:
            return "T"
        if self.kind == KIND_ETA:
            return f"eta{self.k}"
        if self.kind == KIND_TM1:
            return f"tm1_{self.k}"
        return f"eps{self.k}"

    __str__ = name


def _points(curve) -> dict:
    if not curve.has_three_simple_infinities():
        raise RamifiedInfinity("this direction needs three simple rational points over x = infinity")
    return {p.label: p for p in curve.infinities}


def residue_dz(f: RationalFunction, b):
    """Residue of ``f dz`` at ``z = b``, including ``b = infinity``."""
    if f.is_zero():
        return Q(0)
    if b == INFINITY:
        return -laurent_expand(f, INFINITY, 1).coefficient(1)
    return laurent_expand(f, b, 0).coefficient(-1)


def _residue_row(curve, direction, phi: RationalFunction, pts):
    k, j = direction.k, direction.j
    x = curve.x.with_var(phi.var)
    if k == 1:
        w = phi * x ** j
        r = {lab: residue_dz(w, pts[lab].z0) for lab in pts}
        return r["inf1"] * Q(2, 3) - (r["inf0"] + r["inf2"]) * Q(1, 3)
    w = phi * (-x) ** j
    r = {lab: residue_dz(w, pts[lab].z0) for lab in pts}
    return -r["inf2"] * Q(2, 3) + (r["inf0"] + r["inf1"]) * Q(1, 3)


def _combine_log_charge(direction, value_of):
    e1 = value_of(ModuliDirection.eta(1))
    e2 = value_of(ModuliDirection.eta(2))
    if direction.k == 1:
        return e1 * Q(2, 3) + e2 * Q(1, 3)
    return e1 * Q(1, 3) + e2 * Q(2, 3)


def _ends(direction):
    return _INTEGRAL_ENDS[KIND_T] if direction.kind == KIND_T else _INTEGRAL_ENDS[(KIND_ETA, direction.k)]


def j_apply(curve, direction: ModuliDirection, phi: RationalFunction):
    """``J_a(phi dz)`` for a rational ``phi`` over Q: a Rational or a :class:`LogValue`."""
    if direction.kind == KIND_EPS:
        raise UnsupportedDirection("filling-fraction directions have no cycles to integrate over at genus zero")
    pts = _points(curve)
    if phi.is_zero():
        return Q(0)
    if direction.kind == KIND_POTENTIAL:
        return _residue_row(curve, direction, phi, pts)
    if direction.kind == KIND_TM1:
        return _combine_log_charge(direction, lambda d: j_apply(curve, d, phi))
    P = Primitive(phi)
    hi, lo = _ends(direction)
    v = P.regularized_value(curve, pts[hi]) - P.regularized_value(curve, pts[lo])
    return v.rational if v.is_rational() else v


# the Bergman kernel -------------------------------------------------------------------
def _principal_part(curve, j: int, point, var: str) -> RationalFunction:
    """Principal part of ``x(q)^j`` at ``point`` as a rational function of ``var``."""
    if j == 0:
        return RationalFunction.constant(Q(0), var)
    b = point.z0
    xs = laurent_expand(curve.x ** j, b, 0)
    out = RationalFunction.constant(Q(0), var)
    p = RationalFunction.gen(var)
    for m in range(xs.val, 0):
        c = xs.coefficient(m)
        if c == 0:
            continue
        if b == INFINITY:
            out = out + p ** (-m) * c
        else:
            out = out + (p - b) ** m * c
    return out


def dS(curve, upper: str, lower: str, var: str = "p") -> RationalFunction:
    """``integral_{lower}^{upper} B(., p)`` in ``p``: ``1/(p - z_upper) - 1/(p - z_lower)``."""
    pts = _points(curve)
    p = RationalFunction.gen(var)
    out = RationalFunction.constant(Q(0), var)
    for lab, sgn in ((upper, 1), (lower, -1)):
        b = pts[lab].z0
        if b != INFINITY:
            out = out + (p - b).inverse() * sgn
    return out


def j_apply_bergman(curve, direction: ModuliDirection, var: str = "p") -> RationalFunction:
    """``J_a`` in the first slot of ``B(q, p)``: a rational differential in ``p``.

    Residue rows use ``Res_{q -> b} f(q) B(q, p) = -d/dp [principal part of f at b](p)``;
    integral rows give the third-kind differentials ``dS``.
    """
    if direction.kind == KIND_EPS:
        raise UnsupportedDirection("filling-fraction directions have no cycles to integrate over at genus zero")
    pts = _points(curve)
    if direction.kind == KIND_POTENTIAL:
        k, j = direction.k, direction.j
        pp = {lab: -_principal_part(curve, j, pts[lab], var).derivative() for lab in pts}
        if k == 1:
            return pp["inf1"] * Q(2, 3) - (pp["inf0"] + pp["inf2"]) * Q(1, 3)
        sgn = (-1) ** j
        return (-pp["inf2"] * Q(2, 3) + (pp["inf0"] + pp["inf1"]) * Q(1, 3)) * sgn
    if direction.kind == KIND_TM1:
        return _combine_log_charge(direction, lambda d: j_apply_bergman(curve, d, var))
    hi, lo = _ends(direction)
    return dS(curve, hi, lo, var)


def ydx_decomposition(curve, model, var: str = "z") -> RationalFunction:
    """``sum_a t_a J_a(B(., p))`` as a rational function of ``p``."""
    total = RationalFunction.constant(Q(0), var)
    for d, t in model.coordinates():
        if not t == 0:
            total = total + j_apply_bergman(curve, d, var) * t
    return total


def ydx_decomposition_check(curve, model=None, *, perturb: dict | None = None):
    """Exact comparison of ``y dx`` with its expansion on the moduli.

    ``perturb`` maps a direction name to an added amount (negative control).
    """
    from ..cauchy import Report, _rf_json, extract_model

    model = model or extract_model(curve)
    rhs = RationalFunction.constant(Q(0), "z")
    for d, t in model.coordinates():
        t = t + Q((perturb or {}).get(d.name(), 0))
        if not t == 0:
            rhs = rhs + j_apply_bergman(curve, d, "z") * t
    lhs = curve.ydx()
    rep = Report("ydx_decomposition")
    diff = lhs - rhs
    rep.add("ydx_equals_sum_t_J_B", diff.is_zero(), **({} if diff.is_zero() else {"difference": _rf_json(diff)}))
    return rep


# free energy at genus zero ---------------------------------------------------------------
def free_energy_0(curve, model=None) -> LogValue:
    """``F^(0) = (1/2) sum_a t_a J_a(y dx)``."""
    from ..cauchy import extract_model

    model = model or extract_model(curve)
    ydx = curve.ydx()
    total = LogValue(0)
    for d, t in model.coordinates():
        if not t == 0:
            total = total + LogValue.of(j_apply(curve, d, ydx)) * t
    return total * Q(1, 2)


def deformed_curve(curve, model, direction: ModuliDirection, s):
    """The curve with ``y dx -> y dx + s J_a(B)`` at fixed ``x``.

    The added differential has zero sheet sum, so the family stays of
    two-matrix form; only the coordinate ``a`` moves, by ``s``.
    """
    s = Q(s)
    w = j_apply_bergman(curve, direction, "z")
    y = curve.y + w / curve.dx * s
    hint = {"T": model.T, "eta1": model.eta1, "eta2": model.eta2}
    if direction.kind == KIND_T:
        hint["T"] += s
    elif direction.kind == KIND_ETA:
        hint[f"eta{direction.k}"] += s
    elif direction.kind == KIND_TM1:
        a, b = (Q(2, 3), Q(1, 3)) if direction.k == 1 else (Q(1, 3), Q(2, 3))
        hint["eta1"] += a * s
        hint["eta2"] += b * s
    return curve.with_y(y, skip_admission=True, model_hint=hint)


def f0_finite_difference(curve, direction: ModuliDirection, step=Q(1, 10000), digits: int = 40):
    """Central difference of ``F^(0)`` along ``direction`` with one Richardson step.

    Returns ``(estimate, exact J_a(y dx))`` as mpmath numbers.
    """
    import mpmath

    from ..cauchy import extract_model

    model = extract_model(curve)
    step = Q(step)

    def F(s):
        c = deformed_curve(curve, model, direction, s)
        return free_energy_0(c, extract_model(c)).numeric(digits)

    with mpmath.workdps(digits):
        hstep = mpmath.mpf(int(step.numerator)) / int(step.denominator)
        D1 = (F(step) - F(-step)) / (2 * hstep)
        D2 = (F(step / 2) - F(-step / 2)) / hstep
        est = (4 * D2 - D1) / 3
        exact = LogValue.of(j_apply(curve, direction, curve.ydx())).numeric(digits)
    return est, exact


# gradient of F^(1) -----------------------------------------------------------------------
def _xi_values_at(curve, basis, a: int, d: int, pts) -> dict:
    """Primitive of ``xi_{alpha,d}`` (vanishing at ``z = infinity``) at each point over infinity."""
    prim = basis.xi_primitive_local(a, d)
    bp = basis.branch(a, curve.default_order)
    out = {}
    for lab, p in pts.items():
        if p.z0 == INFINITY:
            out[lab] = Q(0)
            continue
        w = bp.alpha * 0 + 1
        diff = w * p.z0 - bp.alpha
        v = w * 0
        for m, c in prim.items():
            v = v + c / diff ** m
        out[lab] = v
    return out


def j_apply_xi(curve, basis, direction: ModuliDirection, a: int, d: int):
    """``J_a(xi_{alpha,d})`` at the generic root ``alpha`` of the ``a``-th factor (in ``Q(alpha)``)."""
    if direction.kind == KIND_EPS:
        raise UnsupportedDirection("filling-fraction directions have no cycles to integrate over at genus zero")
    pts = _points(curve)
    if direction.kind == KIND_POTENTIAL:
        xi = basis.xi_rf(a, d, "z")
        k, j = direction.k, direction.j
        x = curve.x
        xj = x ** j if k == 1 else (-x) ** j
        w = xi * xj
        r = {lab: _residue_nf(w, pts[lab].z0) for lab in pts}
        if k == 1:
            return r["inf1"] * Q(2, 3) - (r["inf0"] + r["inf2"]) * Q(1, 3)
        return -r["inf2"] * Q(2, 3) + (r["inf0"] + r["inf1"]) * Q(1, 3)
    if direction.kind == KIND_TM1:
        return _combine_log_charge(direction, lambda dd: j_apply_xi(curve, basis, dd, a, d))
    vals = _xi_values_at(curve, basis, a, d, pts)
    hi, lo = _ends(direction)
    return vals[hi] - vals[lo]


def _residue_nf(f: RationalFunction, b):
    if b == INFINITY:
        s = laurent_expand(f, INFINITY, 1)
        return -s.coefficient(1)
    return laurent_expand(f, b, 0).coefficient(-1)


def f1_gradient(curve, direction: ModuliDirection, engine=None) -> dict:
    """Two independent evaluations of the derivative of ``F^(1)`` along ``direction``.

    ``direct``: ``-J_a(omega_1^(1))``.  ``assembled``: from the motion of the
    branch points and of ``y'`` there,
    ``-(1/24) sum_alpha (1/c2) [S J(xi_0)/y' + (6 J(xi_1) - (y'''/y') J(xi_0)) / (4 y')]``
    with ``S`` the projective connection and jets in the normalized parameter.
    """
    from ..recursion import engine_for
    from ..recursion.closed import projective_connection

    engine = engine or engine_for(curve)
    w11 = engine.omega(1, 1).to_rational_function("z")
    direct = -LogValue.of(j_apply(curve, direction, w11))
    basis = engine.basis
    total = Q(0)
    for a, bp in enumerate(curve.branch_points(max(curve.default_order, 10))):
        _, y1, _, y3 = bp.y_jet
        S = projective_connection(bp)
        J0 = j_apply_xi(curve, basis, direction, a, 0)
        J1 = j_apply_xi(curve, basis, direction, a, 1)
        local = (S * J0 / y1 + (J1 * 6 - y3 / y1 * J0) / (y1 * 4)) / bp.scale_sq
        total += Q(local) if bp.is_rational else bp.field.trace(local)
    assembled = LogValue.of(total * Q(-1, 24))
    return {"direction": direction.name(), "direct": direct, "assembled": assembled, "agree": direct == assembled}


def scaling_identity_check(curve, model=None, engine=None):
    """``sum_a t_a J_a(xi_{alpha,0}) = 0``: branch points do not move when ``y`` is rescaled."""
    from ..cauchy import Report, extract_model
    from ..recursion import engine_for

    model = model or extract_model(curve)
    engine = engine or engine_for(curve)
    rep = Report("scaling_fixes_branch_points")
    for a, bp in enumerate(curve.branch_points()):
        acc = bp.alpha * 0
        for d, t in model.coordinates():
            if not t == 0:
                acc = acc + j_apply_xi(curve, engine.basis, d, a, 0) * t
        rep.add(f"factor_{a}", acc == 0, value=str(acc))
    return rep


def gradient_json(res: dict, digits: int | None = None) -> dict:
    return {"direction": res["direction"], "agree": res["agree"],
            "direct": res["direct"].to_json(digits), "assembled": res["assembled"].to_json(digits)}


__all__ = [
    "ModuliDirection",
    "deformed_curve",
    "dS",
    "f0_finite_difference",
    "f1_gradient",
    "free_energy_0",
    "gradient_json",
    "j_apply",
    "j_apply_bergman",
    "j_apply_xi",
    "scaling_identity_check",
    "ydx_decomposition",
    "ydx_decomposition_check",
]
