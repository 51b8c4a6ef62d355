"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first.  The field is whatever the
coefficients are: rationals, number-field elements, or rational functions of
another variable.  Plain Python ints are promoted to rationals so that
division never falls back to floats.

Every polynomial carries a variable name.  Arithmetic between polynomials in
the same variable is polynomial arithmetic; a polynomial in a different
variable is treated as a scalar coefficient.  That single rule is what lets
``Q(X)[w]`` be written as polynomials whose coefficients are rational
functions of ``X``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .rational import Q, Rational


def _coerce(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Q(c)
    if type(c).__name__ == "Fraction":
        return Q(c)
    return c


def _is_zero(c) -> bool:
    return c == 0


class Polynomial:
    """Immutable dense polynomial ``sum_k c[k] * var**k``."""

    __slots__ = ("c", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "z"):
        cs = [_coerce(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.c = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, var: str) -> "Polynomial":
        # caller guarantees coerced entries; only trailing zeros are stripped
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        p = object.__new__(cls)
        p.c = tuple(coeffs)
        p.var = var
        return p

    @classmethod
    def constant(cls, c, var: str = "z") -> "Polynomial":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "z") -> "Polynomial":
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var: str = "z") -> "Polynomial":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Sequence, var: str = "z") -> "Polynomial":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-_coerce(r), 1], var)
        return p

    # basic queries -------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self.c

    def degree(self) -> int:
        return len(self.c) - 1  # the zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def lc(self):
        return self.c[-1] if self.c else Q(0)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.c):
            return self.c[k]
        return Q(0)

    def __len__(self) -> int:
        return len(self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial) and other.var == self.var:
            return self.c == other.c
        if isinstance(other, Polynomial):
            return False
        # comparison with a scalar
        if not self.c:
            return _is_zero(other)
        return len(self.c) == 1 and self.c[0] == other

    def __hash__(self) -> int:
        return hash((self.var, self.c))

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.c]}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for k, c in enumerate(self.c):
            if _is_zero(c):
                continue
            if k == 0:
                terms.append(f"({c})")
            elif k == 1:
                terms.append(f"({c})*{self.var}")
            else:
                terms.append(f"({c})*{self.var}^{k}")
        return " + ".join(terms)

    # arithmetic -----------------------------------------------------------
    def _same(self, other) -> bool:
        return isinstance(other, Polynomial) and other.var == self.var

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-c for c in self.c], self.var)

    def __add__(self, other) -> "Polynomial":
        if self._same(other):
            a, b = self.c, other.c
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, v in enumerate(b):
                out[i] = out[i] + v
            return Polynomial._raw(out, self.var)
        if _defers(self, other):
            return NotImplemented
        other = _coerce(other)
        if _is_zero(other):
            return self
        out = list(self.c) if self.c else [Q(0)]
        out[0] = out[0] + other
        return Polynomial._raw(out, self.var)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if self._same(other):
            return self + (-other)
        if _defers(self, other):
            return NotImplemented
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if self._same(other):
            a, b = self.c, other.c
            if not a or not b:
                return Polynomial._raw([], self.var)
            out = [Q(0)] * (len(a) + len(b) - 1)
            for i, u in enumerate(a):
                if _is_zero(u):
                    continue
                for j, v in enumerate(b):
                    out[i + j] = out[i + j] + u * v
            return Polynomial._raw(out, self.var)
        if _defers(self, other):
            return NotImplemented
        other = _coerce(other)
        if _is_zero(other):
            return Polynomial._raw([], self.var)
        return Polynomial._raw([c * other for c in self.c], self.var)

    def __rmul__(self, other) -> "Polynomial":
        if _defers(self, other):
            return NotImplemented
        other = _coerce(other)
        if _is_zero(other):
            return Polynomial._raw([], self.var)
        return Polynomial._raw([other * c for c in self.c], self.var)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, s) -> "Polynomial":
        return self * s

    def __truediv__(self, other) -> "Polynomial":
        """Division by a scalar, or exact division by a polynomial."""
        if self._same(other):
            q, r = self.divmod(other)
            if not r.is_zero():
                raise ArithmeticError("polynomial division is not exact")
            return q
        other = _coerce(other)
        inv = 1 / other if not isinstance(other, Rational) else Q(1) / other
        return self * inv

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if not self._same(other):
            raise TypeError("divmod needs a polynomial in the same variable")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = other.degree()
        lead_inv = Q(1) / other.c[-1] if isinstance(other.c[-1], Rational) else 1 / other.c[-1]
        if len(r) - 1 < db:
            return Polynomial._raw([], self.var), self
        q = [Q(0)] * (len(r) - db)
        b = other.c
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db]
            if _is_zero(coef):
                continue
            coef = coef * lead_inv
            q[k] = coef
            for j in range(db + 1):
                r[k + j] = r[k + j] - coef * b[j]
        return Polynomial._raw(q, self.var), Polynomial._raw(r[:db] if db > 0 else [], self.var)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    # calculus and evaluation ---------------------------------------------
    def __call__(self, v):
        """Horner evaluation at any value supporting ``+`` and ``*``."""
        if not self.c:
            return Q(0)
        acc = self.c[-1]
        for c in reversed(self.c[:-1]):
            acc = acc * v + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial._raw([c * k for k, c in enumerate(self.c)][1:], self.var)

    def integral(self) -> "Polynomial":
        """Antiderivative with zero constant term."""
        return Polynomial._raw([Q(0)] + [c * Q(1, k + 1) for k, c in enumerate(self.c)], self.var)

    def monic(self) -> "Polynomial":
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == 1:
            return self
        inv = Q(1) / lc if isinstance(lc, Rational) else 1 / lc
        return Polynomial._raw([c * inv for c in self.c[:-1]] + [_one_like(lc)], self.var)

    def compose(self, other: "Polynomial") -> "Polynomial":
        """``self(other)`` for a polynomial ``other`` in any variable."""
        out = Polynomial([], other.var)
        for c in reversed(self.c):
            out = out * other + c
        return out

    def shift(self, a) -> "Polynomial":
        """Taylor shift: the polynomial ``p(var + a)``.

        ``a`` may live in an extension of the coefficient field.
        """
        cs = list(self.c)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] = cs[j] + a * cs[j + 1]
        return Polynomial._raw(cs, self.var)

    def reverse(self, n: int | None = None) -> "Polynomial":
        """``var**n * p(1/var)`` with ``n`` defaulting to the degree."""
        if n is None:
            n = self.degree()
        cs = list(self.c) + [Q(0)] * max(0, n + 1 - len(self.c))
        return Polynomial(list(reversed(cs[: n + 1])), self.var)

    def map_coeffs(self, f) -> "Polynomial":
        return Polynomial([f(c) for c in self.c], self.var)

    def with_var(self, var: str) -> "Polynomial":
        return Polynomial._raw(list(self.c), var)

    def valuation(self) -> int:
        for k, c in enumerate(self.c):
            if not _is_zero(c):
                return k
        raise ValueError("valuation of the zero polynomial")


def _one_like(c):
    return c * 0 + 1


def _defers(p: Polynomial, other) -> bool:
    """True when ``other`` implements the operation itself.

    Series always do; a rational function does when it shares the variable.
    """
    name = type(other).__name__
    if name == "LaurentSeries":
        return True
    return name == "RationalFunction" and other.var == p.var


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor.

    Over Q the work is done on primitive integer polynomials, where a
    heuristic modular gcd avoids the coefficient growth of Euclid's
    algorithm.  Other coefficient rings fall back to Euclid.
    """
    if a.is_zero() and b.is_zero():
        return a
    if all(isinstance(c, Rational) for c in a.c + b.c):
        from .factor import integer_gcd

        return integer_gcd(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = Polynomial([1], var), Polynomial([], var)
    t0, t1 = Polynomial([], var), Polynomial([1], var)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc()
    inv = Q(1) / lc if isinstance(lc, Rational) else 1 / lc
    return r0 * inv, s0 * inv, t0 * inv


def inverse_mod(a: Polynomial, m: Polynomial) -> Polynomial:
    """Inverse of ``a`` modulo ``m``; raises ZeroDivisionError if they share a factor."""
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree() != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return s % m


def squarefree_part(p: Polynomial) -> Polynomial:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def power_sums(p: Polynomial, count: int) -> list:
    """Newton power sums ``p_0..p_{count-1}`` of the roots of ``p``."""
    m = p.monic()
    d = m.degree()
    # m = w^d + a_{d-1} w^{d-1} + ... ; e-style coefficients
    a = [m[d - i] for i in range(d + 1)]  # a[0] = 1, a[i] = coefficient of w^{d-i}
    s = [m.lc() * 0 + d]
    for k in range(1, count):
        acc = a[k] * k if k <= d else 0
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + a[i] * s[k - i]
        s.append(-acc)
    return s[:count]
