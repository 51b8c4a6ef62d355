"""Correlators of a spectral curve by residue recursion at the branch points."""

from __future__ import annotations

from .cache import CorrelatorCache
from .closed import omega11_closed, omega11_closed_rational, projective_connection
from .engine import SPLIT_FULL, SPLIT_LITERAL, RecursionEngine
from .multidiff import MultiDifferential
from .structure import StructureReport, verify_structure

_ENGINES: dict = {}


def engine_for(curve, splitting: str = SPLIT_FULL, **kwargs) -> RecursionEngine:
    """Shared engine per (curve fingerprint, splitting rule)."""
    key = (curve.fingerprint, splitting, tuple(sorted(kwargs.items())))
    if key not in _ENGINES:
        _ENGINES[key] = RecursionEngine(curve, splitting=splitting, **kwargs)
    return _ENGINES[key]


def omega(curve, n: int, h: int, *, splitting: str = SPLIT_FULL, **kwargs) -> MultiDifferential:
    """The correlator with ``n`` points at order ``h`` (``y dx`` and ``B`` for the base cases)."""
    if 2 * h + n - 2 < 0:
        raise ValueError("need 2h + n - 2 >= 0")
    return engine_for(curve, splitting, **kwargs).omega(n, h)


__all__ = [
    "CorrelatorCache",
    "MultiDifferential",
    "RecursionEngine",
    "SPLIT_FULL",
    "SPLIT_LITERAL",
    "StructureReport",
    "engine_for",
    "omega",
    "omega11_closed",
    "omega11_closed_rational",
    "projective_connection",
    "verify_structure",
]
