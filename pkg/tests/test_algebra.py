from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cauchytr.algebra.numberfield import NumberField, conjugate_sum
from cauchytr.algebra.polynomial import Polynomial, poly_gcd
from cauchytr.algebra.ratfunc import RationalFunction
from cauchytr.algebra.rational import Q, rational_str
from cauchytr.algebra.series import (
    INFINITY,
    LaurentSeries,
    laurent_expand,
    residue,
    series_reversion,
    series_sqrt,
)
from cauchytr.algebra.symmetric import fiber_polynomial, fiber_sum, lift_coefficients, sheet_sum, sheet_sum_fast
from cauchytr.errors import InsufficientPrecision, NonSquareLeadingCoefficient, NotInvertible, OddLeadingOrder

Z = sympy.Symbol("z")
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(lambda f: Q(f.numerator, f.denominator))
coeff_lists = st.lists(rationals, min_size=1, max_size=5)


def to_sympy(f: RationalFunction, var=Z):
    num = sum(sympy.Rational(str(c)) * var**k for k, c in enumerate(f.num.c))
    den = sum(sympy.Rational(str(c)) * var**k for k, c in enumerate(f.den.c))
    return num / den


def rf(num, den=(1,)):
    return RationalFunction(Polynomial([Q(c) for c in num]), Polynomial([Q(c) for c in den]))


# rationals and polynomials -----------------------------------------------------------
def test_rational_strings_round_trip():
    for s in ["0", "-3", "7/12", "-1/1000000000000000000001"]:
        assert rational_str(Q(s)) == s


@given(coeff_lists, coeff_lists)
def test_polynomial_division_identity(a, b):
    A, B = Polynomial(a), Polynomial(b)
    if B.is_zero():
        return
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.is_zero() or r.degree() < B.degree()


@given(coeff_lists, coeff_lists, coeff_lists)
def test_gcd_divides(a, b, c):
    A, B, C = Polynomial(a), Polynomial(b), Polynomial(c)
    if C.is_zero() or (A.is_zero() and B.is_zero()):
        return
    g = poly_gcd(A * C, B * C)
    assert (A * C).divmod(g)[1].is_zero() and (B * C).divmod(g)[1].is_zero()
    assert C.divmod(g)[1].is_zero() or g.degree() >= C.degree()


# rational functions and Laurent series -------------------------------------------------
def _random_rf(rng, dn=3, dd=3):
    num = [Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dn)]
    den = [Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(dd)] + [Q(1)]
    return rf(num, den)


@pytest.mark.parametrize("seed", range(6))
def test_laurent_expand_matches_sympy(seed):
    rng = random.Random(seed)
    f = _random_rf(rng)
    center = Q(rng.randint(-5, 5), rng.randint(1, 3))
    if f.den(center) == 0:
        center = center + Q(1, 7)
    order = 4
    s = laurent_expand(f, center, order)
    t = sympy.Symbol("t")
    ref = sympy.expand(sympy.series(to_sympy(f).subs(Z, sympy.Rational(str(center)) + t), t, 0, order + 1).removeO())
    for k in range(0, order + 1):
        assert sympy.Rational(str(s.coefficient(k))) == ref.coeff(t, k)


def test_laurent_expand_at_a_pole():
    f = rf([1, 2], [0, 0, 1, 1])  # (1 + 2z)/(z^2 (1 + z))
    s = laurent_expand(f, Q(0), 2)
    assert s.val == -2
    assert [s.coefficient(k) for k in range(-2, 3)] == [1, 1, -1, 1, -1]


def test_expansion_at_infinity_and_residue():
    f = rf([1, 0, 3], [0, 0, 0, 2])  # (1 + 3z^2)/(2 z^3)
    assert residue(f, 0) == Q(3, 2)
    assert residue(f, INFINITY) == -Q(3, 2)
    s = laurent_expand(f, INFINITY, 4)
    assert s.coefficient(1) == Q(3, 2) and s.coefficient(3) == Q(1, 2)


@given(st.lists(rationals, min_size=1, max_size=3), st.lists(rationals, min_size=1, max_size=3, unique=True))
@settings(max_examples=40, deadline=None)
def test_residue_sum_vanishes(num, roots):
    """Residues of a rational differential over its poles and infinity sum to zero."""
    f = RationalFunction(Polynomial(num), Polynomial.from_roots(roots))
    total = residue(f, INFINITY) + sum((residue(f, r) for r in roots), Q(0))
    assert total == 0


def test_series_precision_is_tracked():
    s = LaurentSeries([Q(1), Q(2)], 0, 1)
    with pytest.raises(InsufficientPrecision):
        s.coefficient(3)


@given(st.lists(rationals, min_size=3, max_size=6), rationals)
@settings(max_examples=30, deadline=None)
def test_reversion_composes_to_identity(tail, a1):
    if a1 == 0:
        return
    s = LaurentSeries([Q(0), a1] + tail, 0, len(tail) + 1)
    g = series_reversion(s)
    comp = s.compose(g)
    for k in range(0, comp.order + 1):
        assert comp.coefficient(k) == (1 if k == 1 else 0)


def test_reversion_errors():
    with pytest.raises(NotInvertible):
        series_reversion(LaurentSeries([Q(1), Q(1)], 0, 3))
    with pytest.raises(NotInvertible):
        series_reversion(LaurentSeries([Q(0), Q(0), Q(1)], 0, 4))


@given(st.lists(rationals, min_size=2, max_size=6), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_sqrt_squares_back(tail, r):
    lead = Q(r * r, 4)
    s = LaurentSeries([lead] + tail, 2, len(tail) + 2)
    root = series_sqrt(s)
    sq = root * root
    for k in range(2, s.order + 1):
        assert sq.coefficient(k) == s.coefficient(k)


def test_sqrt_errors_and_extension():
    with pytest.raises(OddLeadingOrder):
        series_sqrt(LaurentSeries([Q(1)], 1, 4))
    with pytest.raises(NonSquareLeadingCoefficient):
        series_sqrt(LaurentSeries([Q(2), Q(1)], 0, 4))
    root = series_sqrt(LaurentSeries([Q(2), Q(1)], 0, 4), extend=True)
    sq = root * root
    assert sq.coefficient(0) == sq.coefficient(0).field(2) and sq.coefficient(1) == sq.coefficient(1).field(1)


# number fields ---------------------------------------------------------------------------
def test_trace_of_powers_matches_sympy():
    P = Polynomial([Q(-2), Q(-1), Q(0), Q(1)])  # w^3 - w - 2, irreducible
    K = NumberField(P)
    a = K.gen
    e = a * a * 3 + a * Q(1, 2) - 5
    w = sympy.Symbol("w")
    ref = sympy.RootSum(sympy.Poly(w**3 - w - 2, w), sympy.Lambda(w, 3 * w**2 + w / 2 - 5))
    assert sympy.Rational(str(K.trace(e))) == ref
    inv = e.inverse()
    assert (inv * e) == K(1)


def test_conjugate_sum_of_rational_expression():
    K = NumberField(Polynomial([Q(-3), Q(0), Q(1)]))
    a = K.gen
    assert conjugate_sum((a + 1).inverse(), K) == Q(-1)  # 1/(1+s) + 1/(1-s) = 2/(1-3)


# fibre and sheet sums ----------------------------------------------------------------------
def _sympy_sheet_sum(f, x, X0):
    w = sympy.Symbol("w")
    num, den = sympy.fraction(sympy.together(to_sympy(x, w) - X0))
    return sympy.simplify(sympy.RootSum(sympy.Poly(num, w), sympy.Lambda(w, to_sympy(f, w))))


@pytest.mark.parametrize("x,f", [
    (rf([0, -3, 0, 1]), rf([0, 1, 1])),
    (rf([0, 0, 1]), rf([1], [2, 1])),
    (rf([2430, 1129, -10, 1], [0, -10, 1]), rf([1, 0, 1], [0, 1])),
])
def test_sheet_sum_against_numeric_roots(x, f):
    S = sheet_sum(f, x)
    for X0 in (Q(7, 3), Q(-11, 2)):
        assert sympy.Rational(str(S(X0))) == _sympy_sheet_sum(f, x, sympy.Rational(str(X0)))


def test_fast_sheet_sum_agrees_with_generic():
    rng = random.Random(3)
    x = rf([0, -3, 0, 1])
    for _ in range(4):
        f = rf([Q(rng.randint(-5, 5)) for _ in range(3)], [Q(rng.randint(1, 5)), Q(rng.randint(-3, 3)), 1])
        fast = sheet_sum_fast(f, x)
        P = fiber_polynomial(x, "w", "X")
        slow = fiber_sum(lift_coefficients(f, "X", "w"), P)
        assert fast is not None and (fast - slow).is_zero()
