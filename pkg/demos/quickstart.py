"""Correlators on the curve x = z^2, y = z + z^3, compared with closed forms."""

from __future__ import annotations

from cauchytr.algebra.rational import Q
from cauchytr.curve import build_curve, rf_from_lists
from cauchytr.energy.hop import free_energy_h
from cauchytr.recursion import omega, omega11_closed, RecursionEngine

curve = build_curve(rf_from_lists([0, 0, 1]), rf_from_lists([0, 1, 0, 1]))
engine = RecursionEngine(curve)

w11 = engine.omega(1, 1)
print("omega_1^(1)(z) dz =", w11.to_rational_function("z"), "dz")
print("closed form agrees:", omega11_closed(curve, engine.basis) == w11)

w3 = omega(curve, 3, 0)
print("omega_3^(0)(1/3, 5/2, -7/4) =", w3.evaluate([Q(1, 3), Q(5, 2), Q(-7, 4)]))

for h in (2, 3):
    print(f"F^({h}) =", free_energy_h(curve, h, engine=engine))
