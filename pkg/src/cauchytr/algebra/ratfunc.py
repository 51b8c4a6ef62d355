"""Univariate rational functions in lowest terms."""

from __future__ import annotations

from typing import Sequence

from .polynomial import Polynomial, _coerce, poly_gcd
from .rational import Q, Rational


class RationalFunction:
    """``num/den`` with ``den`` monic and ``gcd(num, den) = 1``.

    Coefficients may be rationals, number-field elements or rational
    functions in another variable.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str | None = None, *, reduce: bool = True):
        if not isinstance(num, Polynomial):
            v = var or (den.var if isinstance(den, Polynomial) else "z")
            num = Polynomial([num], v)
        v = var or num.var
        num = num.with_var(v)
        if den is None:
            den = Polynomial([1], v)
        elif not isinstance(den, Polynomial):
            den = Polynomial([den], v)
        else:
            den = den.with_var(v)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            if num.is_zero():
                den = Polynomial([1], v)
            else:
                g = poly_gcd(num, den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
                lc = den.lc()
                if not lc == 1:
                    inv = Q(1) / lc if isinstance(lc, Rational) else 1 / lc
                    num = num * inv
                    den = den.monic()
        self.num = num
        self.den = den
        self.var = v

    # constructors ---------------------------------------------------------
    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence = (1,), var: str = "z") -> "RationalFunction":
        return cls(Polynomial(num, var), Polynomial(den, var), var)

    @classmethod
    def gen(cls, var: str = "z") -> "RationalFunction":
        return cls(Polynomial([0, 1], var), None, var, reduce=False)

    @classmethod
    def constant(cls, c, var: str = "z") -> "RationalFunction":
        return cls(Polynomial([c], var), None, var, reduce=False)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def degree(self) -> int:
        """Degree of the map: ``max(deg num, deg den)``."""
        return max(self.num.degree(), self.den.degree())

    def order_at_infinity(self) -> int:
        """Zero order at ``z = infinity`` (negative for a pole)."""
        if self.num.is_zero():
            raise ValueError("order of the zero function")
        return self.den.degree() - self.num.degree()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction) and other.var == self.var:
            return self.num == other.num and self.den == other.den
        if isinstance(other, (RationalFunction, Polynomial)) and other.var != self.var:
            if isinstance(other, Polynomial):
                return False
            return False
        if isinstance(other, Polynomial):
            return self.den.degree() == 0 and self.num == other
        return self.den.degree() == 0 and self.num == other

    def __hash__(self) -> int:
        if self.den.degree() == 0 and self.num.degree() <= 0:
            return hash(self.num[0])
        return hash((self.var, self.num.c, self.den.c))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    __str__ = __repr__

    # arithmetic -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RationalFunction) and other.var == self.var:
            return other
        if isinstance(other, Polynomial) and other.var == self.var:
            return RationalFunction(other, None, self.var, reduce=False)
        if type(other).__name__ == "LaurentSeries":
            return None
        return RationalFunction(Polynomial([_coerce(other)], self.var), None, self.var, reduce=False)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, self.var, reduce=False)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.den == self.den:
            return RationalFunction(self.num + o.num, self.den, self.var)
        if o.den.degree() == 0:
            return RationalFunction(self.num + o.num * self.den, self.den, self.var, reduce=False)
        if self.den.degree() == 0:
            return RationalFunction(self.num * o.den + o.num, o.den, self.var, reduce=False)
        g = poly_gcd(self.den, o.den)
        a = o.den // g
        return RationalFunction(self.num * a + o.num * (self.den // g), self.den * a, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_constant():
            c = o.num[0]
            if c == 0:
                return RationalFunction(Polynomial([], self.var), None, self.var, reduce=False)
            return RationalFunction(self.num * c, self.den, self.var, reduce=False)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        return RationalFunction(num, den, self.var, reduce=False if den.lc() == 1 else True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num, self.var)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, self.var, reduce=False)

    # calculus and evaluation ---------------------------------------------
    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d, self.var)

    def __call__(self, v):
        """Evaluate at a scalar, a series, or another rational function."""
        if isinstance(v, RationalFunction):
            return self.compose(v)
        den = self.den(v)
        if den == 0 and isinstance(den, (Rational, int)):
            raise ZeroDivisionError("evaluation at a pole")
        num = self.num(v)
        if isinstance(den, (Rational, int)) and isinstance(num, (Rational, int)):
            return Q(num) / Q(den)
        return num / den

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """``self(inner(w))`` as a rational function in ``inner``'s variable."""
        d = max(self.num.degree(), self.den.degree())
        # homogenize: num(P/Q) = sum a_k P^k Q^(d-k) / Q^d
        P, Qd = inner.num, inner.den

        def hom(poly: Polynomial) -> Polynomial:
            out = Polynomial([], inner.var)
            for k, a in enumerate(poly.c):
                if a == 0:
                    continue
                out = out + (P ** k) * (Qd ** (d - k)) * a
            return out

        return RationalFunction(hom(self.num), hom(self.den), inner.var)

    def map_coeffs(self, f) -> "RationalFunction":
        return RationalFunction(self.num.map_coeffs(f), self.den.map_coeffs(f), self.var)

    def with_var(self, var: str) -> "RationalFunction":
        return RationalFunction(self.num.with_var(var), self.den.with_var(var), var, reduce=False)

    def poles(self) -> Polynomial:
        """The monic denominator, whose roots are the finite poles."""
        return self.den


def as_rf(value, var: str = "z") -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value, None, value.var)
    return RationalFunction.constant(value, var)
