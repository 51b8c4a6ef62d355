"""Simple algebraic extensions ``Q[t]/(m)`` and their elements.

A :class:`NumberField` is the quotient by an irreducible monic polynomial over
the rationals.  Elements are residues of degree below ``deg m``.  The trace
down to the rationals is the sum over all conjugates, computed from Newton
power sums rather than from numerical roots.
"""

from __future__ import annotations

from .polynomial import Polynomial, inverse_mod, power_sums
from .rational import Q, Rational


class NumberField:
    """The field ``Q(alpha)`` with ``alpha`` a root of ``modulus``."""

    def __init__(self, modulus: Polynomial, *, check: bool = True, name: str = "t"):
        if modulus.degree() < 1:
            raise ValueError("modulus must have positive degree")
        if any(not isinstance(c, Rational) for c in modulus.c):
            raise TypeError("modulus must have rational coefficients")
        self.modulus = modulus.monic().with_var(name)
        self.degree = self.modulus.degree()
        self.name = name
        if check:
            from .factor import is_irreducible
            from ..errors import IrreducibilityFailure

            if not is_irreducible(self.modulus):
                raise IrreducibilityFailure(f"modulus {self.modulus} is reducible over Q")
        self._traces = power_sums(self.modulus, 2 * self.degree + 1)

    # identity ---------------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and other.modulus.c == self.modulus.c

    def __hash__(self) -> int:
        return hash(("NF", self.modulus.c))

    def __repr__(self) -> str:
        return f"NumberField({self.modulus})"

    # constructors -----------------------------------------------------------
    def element(self, coeffs) -> "NFElement":
        p = coeffs if isinstance(coeffs, Polynomial) else Polynomial(coeffs, self.name)
        return NFElement(self, p.with_var(self.name) % self.modulus)

    @property
    def gen(self) -> "NFElement":
        if self.degree == 1:
            return self.element([-self.modulus[0]])
        return self.element([0, 1])

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return self.element([Q(value)])

    # maps to the rationals --------------------------------------------------
    def trace(self, value) -> Rational:
        """Sum of ``value`` over all conjugate embeddings."""
        if not isinstance(value, NFElement):
            return Q(value) * self.degree
        total = Q(0)
        for k, c in enumerate(value.poly.c):
            total += c * self._traces[k]
        return total

    def embeddings(self, digits: int = 30) -> list:
        """Numerical roots of the modulus, for cross-checks only."""
        import mpmath

        with mpmath.workdps(digits):
            coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in reversed(self.modulus.c)]
            return list(mpmath.polyroots(coeffs, maxsteps=200, extraprec=3 * digits))


class NFElement:
    """Residue class of a rational polynomial modulo the field's modulus."""

    __slots__ = ("field", "poly")

    def __init__(self, field: NumberField, poly: Polynomial):
        self.field = field
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different number fields")
            return other.poly
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return Polynomial([Q(other)], self.field.name)
        if type(other).__name__ == "Fraction":
            return Polynomial([Q(other)], self.field.name)
        return None

    def __eq__(self, other) -> bool:
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return self.poly.c == p.c

    def __hash__(self) -> int:
        if len(self.poly.c) <= 1:
            return hash(self.poly[0])
        return hash((self.field, self.poly.c))

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def __neg__(self) -> "NFElement":
        return NFElement(self.field, -self.poly)

    def __add__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return NFElement(self.field, self.poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return NFElement(self.field, self.poly - p)

    def __rsub__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return NFElement(self.field, p - self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return NFElement(self.field, self.poly * Q(other))
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return NFElement(self.field, (self.poly * p) % self.field.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "NFElement":
        if self.poly.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        return NFElement(self.field, inverse_mod(self.poly, self.field.modulus))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return NFElement(self.field, self.poly * (Q(1) / Q(other)))
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return self * NFElement(self.field, p).inverse()

    def __rtruediv__(self, other):
        p = self._lift(other)
        if p is None:
            return NotImplemented
        return NFElement(self.field, p) * self.inverse()

    def __pow__(self, k: int) -> "NFElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.element([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.poly[0]

    def trace(self) -> Rational:
        return self.field.trace(self)

    def __repr__(self) -> str:
        return f"NFElement({self.poly})"

    __str__ = __repr__


def conjugate_sum(expr, field: NumberField) -> Rational:
    """Trace of ``expr`` over ``field``.

    ``expr`` may be a field element, a rational, a polynomial in the generator,
    or a rational function of the generator (reduced modulo the modulus).
    """
    if isinstance(expr, NFElement):
        return field.trace(expr)
    if isinstance(expr, Polynomial):
        return field.trace(field.element(expr))
    if type(expr).__name__ == "RationalFunction":
        num = field.element(expr.num.with_var(field.name))
        den = field.element(expr.den.with_var(field.name))
        return field.trace(num / den)
    return field.trace(Q(expr))


def trace_rational_function(f, field: NumberField):
    """Sum over conjugate embeddings of a rational function with coefficients in ``field``.

    The denominator is cleared by its norm, so the result has rational
    coefficients and lives in the same variable.
    """
    from .factor import norm_polynomial
    from .ratfunc import RationalFunction

    den = f.den
    if all(not isinstance(c, NFElement) or c.is_rational() for c in den.c):
        num = Polynomial([field.trace(c) for c in f.num.c], f.var)
        den_q = Polynomial([c.to_rational() if isinstance(c, NFElement) else Q(c) for c in den.c], f.var)
        return RationalFunction(num, den_q, f.var)
    norm = norm_polynomial(den, field)
    lifted = Polynomial([field(c) for c in norm.c], f.var)
    cof, rem = lifted.divmod(den)
    if not rem.is_zero():
        raise ArithmeticError("denominator does not divide its norm")
    num = f.num * cof
    return RationalFunction(Polynomial([field.trace(c) for c in num.c], f.var), norm, f.var)


def rational_field_of_root(value) -> NumberField:
    """The degree-one field whose generator is the given rational."""
    return NumberField(Polynomial([-Q(value), 1]), check=False)
