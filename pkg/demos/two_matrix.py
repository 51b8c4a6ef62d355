"""Build a two-matrix curve with prescribed moduli, recover them and test the loop equation."""

from __future__ import annotations

from cauchytr.algebra.rational import Q
from cauchytr.cauchy import BuilderSpec, build_cauchy_curve, extract_model, loop_equation_check
from cauchytr.energy.moduli import f1_gradient
from cauchytr.cli.suites import directions
from cauchytr.recursion import RecursionEngine

spec = BuilderSpec.fixture(T=Q(3, 2), eta1=Q(1, 3), eta2=Q(-1, 5), seed=4)
curve = build_cauchy_curve(spec)
model = extract_model(curve)
print("recovered T, eta1, eta2:", model.T, model.eta1, model.eta2, f"(gauge {model.gauge})")
print("potential times:", {k: {j: str(v) for j, v in t.items()} for k, t in model.times.items()})

engine = RecursionEngine(curve)
for h in (1, 2):
    print(f"loop equation at h = {h}:", "holds" if loop_equation_check(curve, h, engine).passed else "FAILS")

for d in directions(curve, model):
    r = f1_gradient(curve, d, engine)
    print(f"dF1/d{d.name():6s} two assemblies agree: {r['agree']}")
