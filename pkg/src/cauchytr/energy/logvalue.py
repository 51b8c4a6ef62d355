"""Exact numbers of the form ``q0 + sum q_i ln r_i`` with rational ``q_i, r_i``.

Every logarithm of a nonzero rational is written over the logarithms of
primes, which are linearly independent over Q, so equality is decided
exactly.  A negative argument contributes ``i pi`` (principal branch); the
coefficient of ``i pi`` is kept as its own rational.
"""

from __future__ import annotations

import sympy

from ..algebra.rational import Q, Rational, rational_str


def _prime_exponents(n: int) -> dict:
    return {int(p): int(e) for p, e in sympy.factorint(n).items()} if n > 1 else {}


class LogValue:
    __slots__ = ("rational", "logs", "ipi")

    def __init__(self, rational=0, logs: dict | None = None, ipi=0):
        self.rational = Q(rational)
        self.logs = {p: Q(c) for p, c in (logs or {}).items() if not Q(c) == 0}
        self.ipi = Q(ipi)

    # constructors -------------------------------------------------------
    @classmethod
    def log(cls, r, coefficient=1) -> "LogValue":
        """``coefficient * ln(r)`` for a nonzero rational ``r``."""
        r = Q(r)
        c = Q(coefficient)
        if r == 0:
            raise ValueError("logarithm of zero")
        ipi = c if r < 0 else Q(0)
        r = abs(r)
        logs: dict = {}
        for p, e in _prime_exponents(int(r.numerator)).items():
            logs[p] = logs.get(p, Q(0)) + c * e
        for p, e in _prime_exponents(int(r.denominator)).items():
            logs[p] = logs.get(p, Q(0)) - c * e
        return cls(0, logs, ipi)

    @classmethod
    def log_abs(cls, r, coefficient=1) -> "LogValue":
        """``coefficient * ln|r|``: the real convention used for regularized integrals."""
        return cls.log(abs(Q(r)), coefficient)

    @classmethod
    def of(cls, value) -> "LogValue":
        return value if isinstance(value, LogValue) else cls(Q(value))

    # queries ---------------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.logs and self.ipi == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogValue):
            try:
                other = LogValue.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.rational == other.rational and self.logs == other.logs and self.ipi == other.ipi

    def __hash__(self) -> int:
        return hash((self.rational, tuple(sorted(self.logs.items())), self.ipi))

    def __repr__(self) -> str:
        return f"LogValue({self.render()})"

    def render(self) -> str:
        parts = [rational_str(self.rational)]
        parts += [f"{rational_str(c)}*ln({p})" for p, c in sorted(self.logs.items())]
        if not self.ipi == 0:
            parts.append(f"{rational_str(self.ipi)}*i*pi")
        return " + ".join(parts)

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other) -> "LogValue":
        o = LogValue.of(other)
        logs = dict(self.logs)
        for p, c in o.logs.items():
            logs[p] = logs.get(p, Q(0)) + c
        return LogValue(self.rational + o.rational, logs, self.ipi + o.ipi)

    __radd__ = __add__

    def __neg__(self) -> "LogValue":
        return LogValue(-self.rational, {p: -c for p, c in self.logs.items()}, -self.ipi)

    def __sub__(self, other) -> "LogValue":
        return self + (-LogValue.of(other))

    def __rsub__(self, other) -> "LogValue":
        return LogValue.of(other) + (-self)

    def __mul__(self, c) -> "LogValue":
        if isinstance(c, LogValue):
            if c.is_rational():
                c = c.rational
            elif self.is_rational():
                return c * self.rational
            else:
                raise TypeError("products of logarithms are not represented")
        c = Q(c)
        return LogValue(self.rational * c, {p: v * c for p, v in self.logs.items()}, self.ipi * c)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "LogValue":
        return self * (Q(1) / Q(c))

    # rendering ---------------------------------------------------------------
    def numeric(self, digits: int = 30):
        """Value as an mpmath number (complex when an ``i pi`` part is present)."""
        import mpmath

        with mpmath.workdps(digits + 5):
            v = mpmath.mpf(int(self.rational.numerator)) / int(self.rational.denominator)
            for p, c in self.logs.items():
                v += mpmath.mpf(int(c.numerator)) / int(c.denominator) * mpmath.log(p)
            if not self.ipi == 0:
                v = mpmath.mpc(v, mpmath.mpf(int(self.ipi.numerator)) / int(self.ipi.denominator) * mpmath.pi)
            return v

    def to_json(self, digits: int | None = None) -> dict:
        doc = {
            "rational": rational_str(self.rational),
            "logs": [[rational_str(c), str(p)] for p, c in sorted(self.logs.items())],
            "i_pi": rational_str(self.ipi),
        }
        if digits:
            import mpmath

            v = self.numeric(digits)
            doc["float"] = mpmath.nstr(v, digits)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "LogValue":
        logs = {int(p): Q(c) for c, p in doc.get("logs", [])}
        return cls(Q(doc["rational"]), logs, Q(doc.get("i_pi", "0")))


def is_rational_value(v) -> bool:
    return isinstance(v, Rational) or (isinstance(v, LogValue) and v.is_rational())
