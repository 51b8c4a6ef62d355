"""Truncated Laurent series with certified precision.

A series stores the coefficients of ``t**val .. t**order`` and promises
nothing beyond ``order``: it stands for ``sum c_k t**k + O(t**(order+1))``.
Every operation derives the order of its result from the orders of its
inputs, and reading a coefficient above the guaranteed order raises
:class:`InsufficientPrecision`.
"""

from __future__ import annotations

from typing import Sequence

import gmpy2

from ..errors import (
    InsufficientPrecision,
    NonSquareLeadingCoefficient,
    NotInvertible,
    OddLeadingOrder,
)
from .polynomial import Polynomial, _coerce
from .rational import Q, Rational

INFINITY = "infinity"


def _zero_like(c):
    return c * 0


class LaurentSeries:
    __slots__ = ("val", "c", "order", "center")

    def __init__(self, coeffs: Sequence, val: int, order: int, center=0):
        cs = [_coerce(x) for x in coeffs]
        if order < val - 1:
            raise ValueError("order below the lowest exponent")
        span = order - val + 1
        if len(cs) > span:
            cs = cs[:span]
        elif len(cs) < span:
            cs = cs + [Q(0)] * (span - len(cs))
        # strip leading zeros so that ``val`` is the true valuation when known
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        self.c = cs[k:]
        self.val = val + k
        self.order = order
        self.center = center

    @classmethod
    def _raw(cls, cs: list, val: int, order: int, center=0) -> "LaurentSeries":
        k = 0
        n = len(cs)
        while k < n and cs[k] == 0:
            k += 1
        s = object.__new__(cls)
        s.c = cs[k:] if k else cs
        s.val = val + k
        s.order = order
        s.center = center
        return s

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, order: int, center=0) -> "LaurentSeries":
        return cls([], order + 1, order, center)

    @classmethod
    def monomial(cls, k: int, c, order: int, center=0) -> "LaurentSeries":
        if order < k:
            return cls.zero(order, center)
        return cls([c], k, order, center)

    @classmethod
    def from_poly(cls, p: Polynomial | Sequence, order: int, center=0) -> "LaurentSeries":
        cs = list(p.c) if isinstance(p, Polynomial) else list(p)
        if order < 0:
            return cls.zero(order, center)
        return cls(cs[: order + 1], 0, order, center)

    # queries ---------------------------------------------------------------
    def is_known_zero(self) -> bool:
        return not self.c

    def coefficient(self, k: int):
        if k > self.order:
            raise InsufficientPrecision(f"coefficient t^{k} requested, series exact only to t^{self.order}")
        if k < self.val:
            return Q(0)
        return self.c[k - self.val]

    __getitem__ = coefficient

    def leading(self):
        if not self.c:
            raise InsufficientPrecision("leading coefficient is not determined at this precision")
        return self.c[0]

    def coefficients(self) -> dict:
        return {self.val + i: c for i, c in enumerate(self.c) if not c == 0}

    def truncate(self, order: int) -> "LaurentSeries":
        if order >= self.order:
            return self
        end = order - self.val + 1
        if end <= 0:
            return LaurentSeries._raw([], order + 1, order, self.center)
        return LaurentSeries._raw(self.c[:end], self.val, order, self.center)

    def with_center(self, center) -> "LaurentSeries":
        return LaurentSeries._raw(list(self.c), self.val, self.order, center)

    def __repr__(self) -> str:
        terms = [f"({c})*t^{self.val + i}" for i, c in enumerate(self.c) if not c == 0]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.order + 1})"

    def agrees_with(self, other: "LaurentSeries", upto: int | None = None) -> bool:
        top = min(self.order, other.order) if upto is None else upto
        lo = min(self.val, other.val)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, top + 1))

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentSeries):
            return self.order == other.order and self.agrees_with(other)
        return NotImplemented

    __hash__ = None

    # arithmetic -------------------------------------------------------------
    def _as_series(self, other) -> "LaurentSeries | None":
        if isinstance(other, LaurentSeries):
            return other
        return None

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries._raw([-x for x in self.c], self.val, self.order, self.center)

    def __add__(self, other) -> "LaurentSeries":
        o = self._as_series(other)
        if o is None:
            other = _coerce(other)
            if other == 0:
                return self
            o = LaurentSeries._raw([other], 0, max(self.order, 0), self.center)
            if self.order < 0:
                return self
        order = min(self.order, o.order)
        val = min(self.val, o.val)
        if val > order:
            return LaurentSeries._raw([], order + 1, order, self.center)
        cs = [Q(0)] * (order - val + 1)
        for src in (self, o):
            base = src.val - val
            for i, x in enumerate(src.c):
                j = base + i
                if j >= len(cs):
                    break
                cs[j] = cs[j] + x
        return LaurentSeries._raw(cs, val, order, self.center)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self + (-other)
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentSeries":
        return (-self) + other

    def __mul__(self, other) -> "LaurentSeries":
        o = self._as_series(other)
        if o is None:
            other = _coerce(other)
            if other == 0:
                return LaurentSeries._raw([], self.order + 1, self.order, self.center)
            return LaurentSeries._raw([x * other for x in self.c], self.val, self.order, self.center)
        return mul(self, o)

    def __rmul__(self, other) -> "LaurentSeries":
        other = _coerce(other)
        if other == 0:
            return LaurentSeries._raw([], self.order + 1, self.order, self.center)
        return LaurentSeries._raw([other * x for x in self.c], self.val, self.order, self.center)

    def __truediv__(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        other = _coerce(other)
        inv = Q(1) / other if isinstance(other, Rational) else 1 / other
        return self * inv

    def __rtruediv__(self, other) -> "LaurentSeries":
        return self.inverse() * _coerce(other)

    def __pow__(self, k: int) -> "LaurentSeries":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            one = self.leading() * 0 + 1 if self.c else Q(1)
            return LaurentSeries._raw([one], 0, self.order - self.val, self.center)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``t**k``."""
        return LaurentSeries._raw(list(self.c), self.val + k, self.order + k, self.center)

    def inverse(self) -> "LaurentSeries":
        if not self.c:
            raise InsufficientPrecision("inverse of a series with undetermined leading term")
        v = self.val
        rel = self.order - v
        a = self.c
        a0 = a[0]
        inv0 = Q(1) / a0 if isinstance(a0, Rational) else 1 / a0
        b = [inv0]
        top = len(a) - 1
        for j in range(1, rel + 1):
            acc = 0
            for i in range(1, min(j, top) + 1):
                acc += a[i] * b[j - i]
            b.append(-acc * inv0)
        return LaurentSeries._raw(b, -v, self.order - 2 * v, self.center)

    # calculus ----------------------------------------------------------------
    def derivative(self) -> "LaurentSeries":
        cs = [x * (self.val + i) for i, x in enumerate(self.c)]
        return LaurentSeries._raw(cs, self.val - 1, self.order - 1, self.center)

    def integral(self) -> "LaurentSeries":
        """Antiderivative with zero constant term; the residue must vanish."""
        if self.val <= -1 and self.order >= -1 and not self.coefficient(-1) == 0:
            raise ValueError("series has a residue; its primitive is not a Laurent series")
        if self.order < -1:
            raise InsufficientPrecision("residue unknown, primitive undefined")
        cs = []
        for i, x in enumerate(self.c):
            k = self.val + i
            cs.append(Q(0) if k == -1 else x * Q(1, k + 1))
        return LaurentSeries._raw(cs, self.val + 1, self.order + 1, self.center)

    def residue(self):
        return self.coefficient(-1)

    # composition -------------------------------------------------------------
    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """``self(inner(t))`` for ``inner`` with positive valuation."""
        if not inner.c:
            raise InsufficientPrecision("inner series has undetermined leading term")
        vg = inner.val
        if vg < 1:
            raise ValueError("inner series must vanish at t = 0")
        vf, of = self.val, self.order
        order = min((of + 1) * vg - 1, (vf - 1) * vg + inner.order)
        if not self.c:
            return LaurentSeries._raw([], order + 1, order, inner.center)
        g = inner
        if vf == 0:
            one = inner.c[0] * 0 + 1
            power = LaurentSeries._raw([one], 0, inner.order - vg, inner.center)
        else:
            power = g ** vf
        total = None
        for i, coeff in enumerate(self.c):
            k = vf + i
            if k * vg > order:
                break
            if not coeff == 0:
                term = power * coeff
                total = term if total is None else total + term
            power = (power * g).truncate(order)
        if total is None:
            return LaurentSeries._raw([], order + 1, order, inner.center)
        return total.truncate(order)


def _cleared(cs) -> tuple:
    den = gmpy2.mpz(1)
    for c in cs:
        den = gmpy2.lcm(den, c.denominator)
    return [gmpy2.mpz(c * den) for c in cs], den


def _rational_convolution(ac, bc, n: int) -> list:
    """First ``n`` coefficients of the product of two rational coefficient lists.

    Denominators are cleared and the integer product is taken in one
    multiplication by Kronecker substitution, so only ``n`` fractions are
    reduced at the end instead of one per term.
    """
    A, da = _cleared(ac)
    B, db = _cleared(bc)
    bound = max(abs(x) for x in A) * max(abs(x) for x in B) * min(len(A), len(B))
    if bound == 0:
        return [Q(0)] * n
    k = int(gmpy2.bit_length(bound)) + 2
    pa = gmpy2.mpz(0)
    for x in reversed(A):
        pa = (pa << k) + x
    pb = gmpy2.mpz(0)
    for x in reversed(B):
        pb = (pb << k) + x
    r = pa * pb
    half, full, mask = gmpy2.mpz(1) << (k - 1), gmpy2.mpz(1) << k, (gmpy2.mpz(1) << k) - 1
    den = da * db
    out = []
    for _ in range(n):
        low = r & mask
        if low >= half:
            low -= full
        out.append(gmpy2.mpq(low, den))
        r = (r - low) >> k
    return out


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    order = min(a.order + b.val, b.order + a.val)
    val = a.val + b.val
    n = order - val + 1
    if n <= 0:
        return LaurentSeries._raw([], order + 1, order, a.center)
    ac, bc = a.c, b.c
    la = min(len(ac), n)
    lb = min(len(bc), n)
    if la and lb and all(isinstance(c, Rational) for c in ac[:la]) and all(isinstance(c, Rational) for c in bc[:lb]):
        return LaurentSeries._raw(_rational_convolution(ac[:la], bc[:lb], n), val, order, a.center)
    out = [Q(0)] * n
    for i in range(la):
        u = ac[i]
        if u == 0:
            continue
        top = min(lb, n - i)
        for j in range(top):
            out[i + j] += u * bc[j]
    return LaurentSeries._raw(out, val, order, a.center)


def series_reversion(s: LaurentSeries) -> LaurentSeries:
    """Compositional inverse of ``s = a1 t + a2 t^2 + ...`` with ``a1 != 0``.

    Lagrange inversion: ``[t^n] g = (1/n) [u^(n-1)] (u / s(u))^n``.
    """
    if s.val < 1:
        if s.val <= 0 and s.order >= 0 and not s.coefficient(0) == 0:
            raise NotInvertible("series has a nonzero constant term")
        if s.val < 0:
            raise NotInvertible("series has a pole")
    if s.order < 1:
        raise InsufficientPrecision("linear coefficient unknown")
    if s.val != 1:
        raise NotInvertible("linear coefficient vanishes")
    N = s.order
    phi = s.shift(-1).inverse()  # u / s(u), exact to u^(N-1)
    out = [Q(0)]
    power = phi
    for n in range(1, N + 1):
        coef = power.coefficient(n - 1)
        out.append(coef * Q(1, n))
        if n < N:
            power = power * phi
    return LaurentSeries(out, 0, N, s.center)


def series_sqrt(s: LaurentSeries, *, extend: bool = False) -> LaurentSeries:
    """Square root with the canonical leading coefficient.

    For a rational leading coefficient the positive root is taken.  When the
    leading coefficient is not a square and ``extend`` is set (rational
    coefficients only), the result lives in ``Q(sqrt(c))`` and its leading
    coefficient is that field's generator.
    """
    if not s.c:
        raise InsufficientPrecision("square root of an undetermined series")
    if s.val % 2:
        raise OddLeadingOrder(f"lowest exponent {s.val} is odd")
    m = s.val // 2
    c0 = s.c[0]
    root = _rational_sqrt(c0)
    coeffs = s.c
    if root is None:
        if not extend or not all(isinstance(x, Rational) for x in s.c):
            raise NonSquareLeadingCoefficient(f"leading coefficient {c0} is not a square")
        from .numberfield import NumberField

        field = NumberField(Polynomial([-c0, 0, 1]), check=True, name="r")
        root = field.gen
        coeffs = [field(x) for x in s.c]
    rel = s.order - s.val
    b = [root]
    inv2 = 1 / (2 * root) if not isinstance(root, Rational) else Q(1) / (2 * root)
    for j in range(1, rel + 1):
        acc = coeffs[j] if j < len(coeffs) else 0
        for i in range(1, j):
            acc = acc - b[i] * b[j - i]
        b.append(acc * inv2)
    return LaurentSeries._raw(b, m, s.order - m, s.center)


def _rational_sqrt(c):
    import gmpy2

    if isinstance(c, Rational):
        if c < 0:
            return None
        n, d = gmpy2.mpz(c.numerator), gmpy2.mpz(c.denominator)
        if gmpy2.is_square(n) and gmpy2.is_square(d):
            return Q(int(gmpy2.isqrt(n)), int(gmpy2.isqrt(d)))
        return None
    if hasattr(c, "is_rational") and c.is_rational():
        r = _rational_sqrt(c.to_rational())
        return None if r is None else c.field(r)
    return None


def laurent_expand(f, center, order: int) -> LaurentSeries:
    """Expansion of a rational function at a point or at infinity.

    At infinity the local coordinate is ``s = 1/z``.  ``center`` may belong to
    an extension of the coefficient field of ``f``.
    """
    from .ratfunc import as_rf

    f = as_rf(f)
    if f.is_zero():
        return LaurentSeries.zero(order, center)
    if center == INFINITY:
        dn, dd = f.num.degree(), f.den.degree()
        num = f.num.reverse(dn)
        den = f.den.reverse(dd)
        shift = dd - dn
    else:
        num = f.num.shift(center) if not center == 0 else f.num
        den = f.den.shift(center) if not center == 0 else f.den
        shift = 0
    vn = num.valuation()
    vd = den.valuation()
    v = vn - vd + shift
    rel = order - v
    if rel < 0:
        return LaurentSeries.zero(order, center)
    ns = LaurentSeries(num.c[vn: vn + rel + 1], 0, rel, center)
    ds = LaurentSeries(den.c[vd: vd + rel + 1], 0, rel, center)
    q = ns * ds.inverse()
    return q.shift(v).with_center(center)


def residue(f, point=0):
    """Residue of the differential ``f dz`` at ``point``.

    For a series the local coordinate is the series variable and the
    coefficient of ``t**-1`` is returned.
    """
    if isinstance(f, LaurentSeries):
        if f.order < -1:
            raise InsufficientPrecision("series does not reach t^-1")
        return f.coefficient(-1)
    if point == INFINITY:
        # f(1/s) * (-1/s^2): residue is minus the s^1 coefficient of f(1/s)
        return -laurent_expand(f, INFINITY, 1).coefficient(1)
    return laurent_expand(f, point, -1).coefficient(-1)
