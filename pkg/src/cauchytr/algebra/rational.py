"""Exact rationals.

The coefficient field is GMP's ``mpq``: a reduced fraction with a positive
denominator, much faster than :class:`fractions.Fraction` for the long
coefficient recurrences in the recursion engine.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _AbstractRational

import gmpy2

Rational = type(gmpy2.mpq(0))

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def Q(value, denominator=None) -> Rational:
    """Coerce ints, strings like ``"-3/4"``, Fractions and mpq to an exact rational."""
    if denominator is not None:
        return gmpy2.mpq(value, denominator)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return gmpy2.mpq(value)
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational string: {value!r}")
        return gmpy2.mpq(text)
    if isinstance(value, _AbstractRational):
        return gmpy2.mpq(int(value.numerator), int(value.denominator))
    if type(value).__name__ == "mpz":
        return gmpy2.mpq(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def is_rational(value) -> bool:
    return isinstance(value, (Rational, int)) and not isinstance(value, bool)


def rational_str(q) -> str:
    """Canonical text form: ``"p/q"`` or ``"p"`` for integers."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def height(q) -> int:
    q = Q(q)
    return max(abs(int(q.numerator)), int(q.denominator))
