"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class CauchyTRError(Exception):
    """Base class for all errors raised by the package."""


# exact algebra
class InsufficientPrecision(CauchyTRError):
    """A series coefficient beyond its guaranteed order was requested."""


class NotInvertible(CauchyTRError):
    """Series reversion or inversion is impossible for this input."""


class OddLeadingOrder(CauchyTRError):
    """Square root of a series whose lowest exponent is odd."""


class NonSquareLeadingCoefficient(CauchyTRError):
    """Square root needs a field extension that was not requested."""


class NonSeparable(CauchyTRError):
    """The fibre polynomial has a repeated root identically."""


class PoleCollision(CauchyTRError):
    """The summand has a pole at a root of the fibre polynomial."""


class IrreducibilityFailure(CauchyTRError):
    """A modulus is reducible, or a factor is beyond the supported degree."""


# curves
class NonSimpleBranchPoint(CauchyTRError):
    """dx has a zero of order two or more."""


class CuspDetected(CauchyTRError):
    """dy vanishes at a zero of dx."""


class BranchPointAtInfinity(CauchyTRError):
    """x has a critical point where z or x itself is infinite."""


class EliminationFailure(CauchyTRError):
    """The parametrization is not birational onto its image."""


class DegenerateCurve(CauchyTRError):
    """The curve fails admission (constant x, sheet degree one, ...)."""


# recursion, cache and free energies
class CacheMismatch(CauchyTRError):
    """A cached correlator belongs to a different curve."""


class ResidueObstruction(CauchyTRError):
    """A differential has a nonzero residue where none is allowed."""


class RamifiedInfinity(CauchyTRError):
    """The curve does not have three simple points over x = infinity."""


class UnsupportedDirection(CauchyTRError):
    """A moduli direction that cannot be evaluated on this curve."""


# two-matrix structure
class NotCubic(CauchyTRError):
    """Sheet degree differs from three."""


class InfeasibleConstraints(CauchyTRError):
    """The builder's linear system has no nonzero solution."""


class ResidueInconsistency(CauchyTRError):
    """Residues at the points over infinity do not sum to zero."""


class NotCauchy(CauchyTRError):
    """The sheets of y do not sum to zero, so the curve is not of two-matrix form."""
