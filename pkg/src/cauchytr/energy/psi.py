"""The primitive ``Psi`` of ``y dx`` normalized by ``Psi(o) = 0``."""

from __future__ import annotations

from ..algebra.rational import Q, rational_str
from ..algebra.series import LaurentSeries
from ..errors import UnsupportedDirection
from .logvalue import LogValue
from .primitive import Primitive


class PsiPrimitive:
    """``Psi(z) = R(z) - R(o) + sum c_r (ln(z - r) - ln(o - r))``.

    Logarithms appear exactly where ``y dx`` has residues (at the points over
    ``x = infinity``).  ``log_terms`` lists ``(coefficient, factor)`` with the
    factor monic irreducible over Q; for a linear factor the root is explicit.
    """

    def __init__(self, curve, o=None):
        self.curve = curve
        self.o = Q(o) if o is not None else curve.base_point
        if not curve.is_regular_point(self.o):
            raise ValueError(f"base point {self.o} is not a regular point of the curve")
        self.primitive = Primitive(curve.ydx())
        self.rational = self.primitive.rational
        self.rational_offset = self.rational(self.o)

    @property
    def log_terms(self) -> list:
        out = []
        for f, A in self.primitive.logs:
            if f.degree() == 1:
                r = -f[0] / f[1]
                out.append((A(r) / f.derivative()(r), r))
            else:
                out.append((None, f))
        return out

    @property
    def infinity_log_coefficient(self):
        """Coefficient of ``ln z`` as ``z -> infinity``: minus the residue of ``y dx`` there."""
        total = Q(0)
        for f, A in self.primitive.logs:
            if A.degree() == f.degree() - 1:
                total += A.lc() / f.lc()
        return total

    def check(self) -> bool:
        return self.primitive.check()

    def offset_value(self) -> LogValue:
        """``Psi_unnormalized(o)`` as an exact number (needs rational log roots)."""
        out = LogValue(self.rational_offset)
        for c, r in self.log_terms:
            if c is None:
                raise UnsupportedDirection("logarithm roots outside Q")
            out = out + LogValue.log_abs(self.o - r, c)
        return out

    def value(self, z) -> LogValue:
        """``Psi(z)`` at a rational regular point."""
        z = Q(z)
        out = LogValue(self.rational(z))
        for c, r in self.log_terms:
            if c is None:
                raise UnsupportedDirection("logarithm roots outside Q")
            out = out + LogValue.log_abs(z - r, c)
        return out - self.offset_value()

    def local_series(self, alpha, order: int) -> LaurentSeries:
        """``Psi(alpha + t)`` in ``t``, omitting the logarithmic constant at ``alpha``.

        That constant never enters a residue against a residue-free
        differential, which is the only use made of this series.
        """
        return self.primitive.local_series(alpha, order, base=self.o)

    def to_json(self) -> dict:
        R = self.rational
        return {
            "base_point": rational_str(self.o),
            "rational": {"numerator": [rational_str(c) for c in R.num.c],
                         "denominator": [rational_str(c) for c in R.den.c]},
            "logs": [
                {"coefficient": rational_str(c), "root": rational_str(r)} if c is not None
                else {"numerator": [rational_str(x) for x in A.c], "factor": [rational_str(x) for x in f.c]}
                for (c, r), (f, A) in zip(self.log_terms, self.primitive.logs)
            ],
        }


def psi(curve, o=None) -> PsiPrimitive:
    return PsiPrimitive(curve, o)
