"""The operator ``H`` and the free energies ``F^(h)``, ``h >= 2``.

``H . phi = -sum_alpha Res_{q -> alpha} phi(q) Psi(q)``.  On the basis the
residue splits label by label: ``rho_L = sum_alpha Res Psi Xi_L``, computed
from the local series of ``Psi`` at one generic root and traced down to Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.rational import Q, rational_str
from ..errors import ResidueObstruction
from ..recursion import engine_for
from ..recursion.engine import SPLIT_FULL, residue_of_product
from ..recursion.multidiff import KIND_BERGMAN, KIND_XI, KIND_YDX, MultiDifferential
from .psi import PsiPrimitive


@dataclass
class IdentityReport:
    """Outcome of comparing two exactly computed sides of an identity."""

    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, **({"detail": self.detail} if self.detail else {})}


class PsiPairing:
    """Caches ``rho_L = sum over conjugates of Res Psi Xi_L`` for one curve and base point."""

    def __init__(self, curve, basis, o=None):
        self.curve = curve
        self.basis = basis
        self.psi = PsiPrimitive(curve, o)
        self._series: dict = {}
        self._rho: dict = {}

    def _psi_series(self, a: int, order: int):
        key = (a, order)
        if key not in self._series:
            bp = self.basis.branch(a, self.curve.default_order)
            self._series[key] = self.psi.local_series(bp.alpha, order)
        return self._series[key]

    def rho(self, label) -> object:
        if label in self._rho:
            return self._rho[label]
        a, d, _ = label
        order = 2 * d + 4
        bp = self.basis.branch(a, self.curve.default_order)
        from ..algebra.series import laurent_expand

        e = laurent_expand(self.basis.rf(label), bp.alpha, order)
        if not e.coefficient(-1) == 0:
            raise ResidueObstruction(f"basis element {label} has a residue; H would depend on the base point")
        v = residue_of_product(self._psi_series(a, order), e)
        v = Q(v) if bp.is_rational else bp.field.trace(v)
        self._rho[label] = v
        return v


def H_apply(curve, phi: MultiDifferential, o=None, *, pairing: PsiPairing | None = None):
    """``H`` in the last variable of ``phi``.

    Returns a rational number for one-point input, the ``(n-1)``-point
    :class:`MultiDifferential` otherwise, and for the Bergman kernel the
    rational function ``-y dx`` obtained from its single diagonal residue.
    """
    if phi.kind == KIND_BERGMAN:
        P = PsiPrimitive(curve, o)
        # Res_{q=p} Psi(q) dq/(q-p)^2 = Psi'(p)
        return -(P.rational.derivative() + P.primitive.log_part)
    if phi.kind == KIND_YDX:
        raise ValueError("H is not defined on y dx")
    pairing = pairing or PsiPairing(curve, phi.basis, o)
    if phi.n == 1:
        total = Q(0)
        for (lab,), c in phi.data.items():
            total += c * pairing.rho(lab)
        return -total
    out: dict = {}
    for S, c in phi.data.items():
        for lab in set(S):
            rest = list(S)
            rest.remove(lab)
            rest = tuple(rest)
            v = -c * pairing.rho(lab)
            if not v == 0:
                out[rest] = out.get(rest, Q(0)) + v
    return MultiDifferential(phi.n - 1, phi.h, phi.basis, out, KIND_XI)


def free_energy_h(curve, h: int, o=None, *, splitting: str = SPLIT_FULL, engine=None):
    """``F^(h) = 1/(2-2h) sum_alpha Res Psi omega_1^(h)`` for ``h >= 2``."""
    if h < 2:
        raise ValueError("free_energy_h needs h >= 2")
    engine = engine or engine_for(curve, splitting)
    w = engine.omega(1, h)
    return -H_apply(curve, w, o) / (2 - 2 * h)


def dilaton_check(curve, n: int, h: int, *, splitting: str = SPLIT_FULL, engine=None, o=None) -> IdentityReport:
    """Compare ``(2 - n - 2h) omega_n^(h)`` with ``-H . omega_{n+1}^(h)`` coefficient by coefficient."""
    if 2 * h + n - 2 <= 0:
        raise ValueError("need 2h + n - 2 > 0")
    engine = engine or engine_for(curve, splitting)
    lhs = engine.omega(n, h).scale(2 - n - 2 * h)
    rhs = H_apply(curve, engine.omega(n + 1, h), o).scale(-1)
    return _compare(f"dilaton({n},{h})", lhs, rhs)


def _compare(name: str, lhs: MultiDifferential, rhs: MultiDifferential, limit: int = 5) -> IdentityReport:
    keys = sorted(set(lhs.data) | set(rhs.data))
    diffs = [k for k in keys if not lhs.coefficient(k) == rhs.coefficient(k)]
    detail = {"terms": len(keys), "mismatches": len(diffs)}
    if diffs:
        detail["first"] = [
            {"labels": [list(l) for l in k], "lhs": rational_str(lhs.coefficient(k)),
             "rhs": rational_str(rhs.coefficient(k))}
            for k in diffs[:limit]
        ]
        ratios = {rhs.coefficient(k) / lhs.coefficient(k) for k in keys
                  if not lhs.coefficient(k) == 0}
        if len(ratios) == 1:
            detail["uniform_ratio"] = rational_str(ratios.pop())
    return IdentityReport(name, not diffs, detail)


def homogeneity_check(curve, h: int, kappa, *, splitting: str = SPLIT_FULL) -> IdentityReport:
    """``F^(h)`` of the curve with ``y -> kappa y`` equals ``kappa^(2-2h) F^(h)``."""
    kappa = Q(kappa)
    F = free_energy_h(curve, h, splitting=splitting)
    Fk = free_energy_h(curve.scaled(kappa), h, splitting=splitting)
    expected = F * kappa ** (2 - 2 * h)
    return IdentityReport(f"homogeneity(h={h},kappa={rational_str(kappa)})", Fk == expected,
                          {"F": rational_str(F), "F_scaled": rational_str(Fk), "expected": rational_str(expected)})
