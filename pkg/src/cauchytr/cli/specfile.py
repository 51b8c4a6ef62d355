"""Curve spec files: JSON with exact rational strings.

Schema::

    {"x": {"numerator": [...], "denominator": [...]},   # ascending coefficients in z
     "y": {"numerator": [...], "denominator": [...]},
     "o": "1/2",                     # optional base point
     "label": "...",                 # optional
     "infinity_labels": [...],       # optional: the poles of x in the order inf0, inf1, ...
                                     # ("infinity" stands for z = oo)
     "model_hint": {"T": "1", "eta1": "0", "eta2": "0"}}   # optional gauge hint
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..algebra.rational import Q, rational_str
from ..curve import SpectralCurve, rf_from_lists


class SpecError(ValueError):
    """The file is unreadable or does not follow the schema."""


BUNDLED = ("z2", "z3", "builder")


def _coefficients(doc, key: str, part: str) -> list:
    raw = doc[key].get(part, ["1"] if part == "denominator" else None)
    if raw is None:
        raise SpecError(f"missing field {key}.{part}")
    if not isinstance(raw, list) or not raw:
        raise SpecError(f"{key}.{part} must be a non-empty list of rational strings")
    try:
        return [Q(str(c)) for c in raw]
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{key}.{part}: {exc}") from exc


def parse_spec(doc: dict) -> dict:
    """Validate the shape of a spec and return the keyword arguments of :class:`SpectralCurve`."""
    if not isinstance(doc, dict):
        raise SpecError("a curve spec is a JSON object")
    for key in ("x", "y"):
        if not isinstance(doc.get(key), dict):
            raise SpecError(f"field {key!r} must be an object with numerator/denominator lists")
    fields = {}
    for key in ("x", "y"):
        num = _coefficients(doc, key, "numerator")
        den = _coefficients(doc, key, "denominator")
        if all(c == 0 for c in den):
            raise SpecError(f"{key}.denominator is zero")
        fields[key] = rf_from_lists(num, den)
    kw = {"x": fields["x"], "y": fields["y"], "label": str(doc.get("label", ""))}
    if doc.get("o") is not None:
        kw["base_point"] = Q(str(doc["o"]))
    if doc.get("infinity_labels") is not None:
        kw["infinity_labels"] = list(doc["infinity_labels"])
    if doc.get("model_hint") is not None:
        kw["model_hint"] = {k: Q(str(v)) for k, v in doc["model_hint"].items()}
    return kw


def read_spec(path: str | Path) -> dict:
    """Load ``path`` (or a bundled name such as ``builder``) into a raw spec dict."""
    name = str(path)
    if name in BUNDLED and not Path(name).exists():
        text = resources.files("cauchytr.cli").joinpath("specs", f"{name}.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise SpecError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc


def curve_from_spec(doc: dict, *, order: int | None = None) -> SpectralCurve:
    kw = parse_spec(doc)
    if order is not None:
        kw["order"] = order
    return SpectralCurve(**kw)


def spec_of_curve(curve: SpectralCurve) -> dict:
    """The spec that reproduces ``curve``, including its labels and gauge hint."""
    doc = {"label": curve.label, **curve.spec_dict(), "o": rational_str(curve.base_point)}
    labels = curve._labels_for_copy()
    if labels is not None:
        doc["infinity_labels"] = labels
    if curve.model_hint:
        doc["model_hint"] = {k: rational_str(v) for k, v in sorted(curve.model_hint.items())}
    return doc
