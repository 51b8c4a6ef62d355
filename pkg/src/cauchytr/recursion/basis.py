"""The odd principal-part basis in which correlators are stored.

At a zero ``alpha`` of ``dx`` let ``u`` be the normalized square-root
parameter (``x - x(alpha) = c2 u^2``).  For ``d >= 0`` put

    xi_{alpha,d}(z) dz = -(1/(2d+1)) d[ principal part at alpha of u^-(2d+1) ],

a residue-free differential with a single pole of order ``2d+2`` at alpha and
leading term ``dz/(z - alpha)^(2d+2)``.  Under the local involution its
principal part is odd.  Grouping the conjugate zeros of one irreducible factor
``f`` of the ``dx`` numerator gives rational differentials

    Xi_{(f,d,j)}(z) = sum over roots alpha of f of alpha^j xi_{alpha,d}(z),

and every correlator with ``2h + n - 2 > 0`` is a rational combination of
products of these in its variables.  A label is the integer triple
``(factor index, d, j)`` with ``0 <= j < deg f``.

:class:`LocalFrame` holds everything the recursion evaluates at one factor:
expansions of all basis elements and of the recursion kernel in ``t = z - alpha``.
"""

from __future__ import annotations

from ..algebra.polynomial import Polynomial
from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q, Rational
from ..algebra.series import LaurentSeries, laurent_expand
from ..curve import SpectralCurve

Label = tuple  # (factor index, d, j)


def _one(alpha):
    return alpha * 0 + 1


def _trace_poly(p: Polynomial, trace) -> Polynomial:
    return Polynomial([trace(c) for c in p.c], p.var)


class XiBasis:
    """Basis data for one curve; shared by all correlators of that curve."""

    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self.factors = curve.branch_factors
        self._frames: dict = {}
        self._rf_cache: dict = {}
        self._coeff_cache: dict = {}
        self._dual: dict = {}

    # label bookkeeping ------------------------------------------------------
    def labels(self, dmax: int) -> list[Label]:
        out = []
        for a, f in enumerate(self.factors):
            for d in range(dmax + 1):
                for j in range(f.degree()):
                    out.append((a, d, j))
        return out

    def factor_degree(self, a: int) -> int:
        return self.factors[a].degree()

    def branch(self, a: int, order: int):
        return self.curve.branch_points(order)[a]

    def dual_basis(self, a: int) -> list:
        """Elements ``beta_j`` of ``Q(alpha)`` with ``Tr(alpha^i beta_j) = delta_ij``."""
        if a in self._dual:
            return self._dual[a]
        bp = self.branch(a, self.curve.default_order)
        D = bp.count
        if D == 1:
            out = [Q(1)]
        else:
            field = bp.field
            tr = [field.trace(bp.alpha ** k) for k in range(2 * D - 1)]
            # invert the Hankel matrix of traces exactly
            import sympy

            M = sympy.Matrix(D, D, lambda i, j: sympy.Rational(str(tr[i + j])))
            Minv = M.inv()
            out = []
            for j in range(D):
                coeffs = [Q(str(Minv[j, k])) for k in range(D)]
                out.append(field.element(coeffs))
        self._dual[a] = out
        return out

    # the local principal parts ----------------------------------------------
    def xi_local(self, a: int, d: int) -> dict:
        """Coefficients ``X_m`` (in ``Q(alpha)``) with ``xi_{alpha,d} = sum X_m (z-alpha)^-m``."""
        key = (a, d)
        if key in self._coeff_cache:
            return self._coeff_cache[key]
        bp = self.branch(a, max(self.curve.default_order, 2 * d + 3))
        u = bp.zeta.truncate(2 * d + 2)
        inv = u ** (-(2 * d + 1))  # valuation -(2d+1)
        out = {}
        for m in range(1, 2 * d + 2):
            pm = inv.coefficient(-m)
            if not pm == 0:
                out[m + 1] = pm * m * Q(1, 2 * d + 1)
        self._coeff_cache[key] = out
        return out

    def xi_primitive_local(self, a: int, d: int) -> dict:
        """``-(1/(2d+1)) * principal part of u^-(2d+1)`` as ``{m: coeff of (z-alpha)^-m}``."""
        bp = self.branch(a, max(self.curve.default_order, 2 * d + 3))
        u = bp.zeta.truncate(2 * d + 2)
        inv = u ** (-(2 * d + 1))
        out = {}
        for m in range(1, 2 * d + 2):
            pm = inv.coefficient(-m)
            if not pm == 0:
                out[m] = -pm * Q(1, 2 * d + 1)
        return out

    def xi_rf(self, a: int, d: int, var: str = "z") -> RationalFunction:
        """``xi_{alpha,d}`` for the generic root, as a rational function over ``Q(alpha)``."""
        bp = self.branch(a, self.curve.default_order)
        alpha = bp.alpha
        one = _one(alpha)
        lin = Polynomial([-alpha, one], var)
        top = 2 * d + 2
        num = Polynomial([], var)
        for m, c in self.xi_local(a, d).items():
            num = num + (lin ** (top - m)) * c
        return RationalFunction(num, lin ** top, var, reduce=False)

    def rf(self, label: Label, var: str = "z") -> RationalFunction:
        """The rational function ``Xi_label(z)``."""
        key = (label, var)
        if key in self._rf_cache:
            return self._rf_cache[key]
        a, d, j = label
        bp = self.branch(a, self.curve.default_order)
        f = self.factors[a].with_var(var)
        top = 2 * d + 2
        if bp.count == 1:
            alpha = bp.alpha
            lin = Polynomial([-alpha, 1], var)
            num = Polynomial([], var)
            for m, c in self.xi_local(a, d).items():
                num = num + (lin ** (top - m)) * c
            out = RationalFunction(num, lin ** top, var)
        else:
            alpha = bp.alpha
            one = _one(alpha)
            # g = f / (z - alpha) over Q(alpha)
            fa = Polynomial([c * one for c in f.c], var)
            g, r = fa.divmod(Polynomial([-alpha, one], var))
            assert r.is_zero()
            num_a = Polynomial([], var)
            aj = alpha ** j
            for m, c in self.xi_local(a, d).items():
                num_a = num_a + (g ** m) * (fa ** (top - m)) * (c * aj)
            num = _trace_poly(num_a, bp.field.trace)
            out = RationalFunction(num, f ** top, var)
        self._rf_cache[key] = out
        return out

    def value(self, label: Label, z) -> Rational:
        f = self.rf(label)
        return f.num(z) / f.den(z)

    # local frames ---------------------------------------------------------------
    def frame(self, a: int, dmax: int, order: int | None = None) -> "LocalFrame":
        """Expansions at the ``a``-th factor for labels up to degree ``dmax``."""
        if order is None:
            order = 2 * dmax + 6
        key = (a, dmax, order)
        if key not in self._frames:
            self._frames[key] = LocalFrame(self, a, dmax, order)
        return self._frames[key]


class LocalFrame:
    """Series data at one branch factor in the variable ``t = z - alpha``.

    ``order`` bounds the precision of every stored series; basis expansions are
    exact through ``t**order``, and the kernel components through the order
    the residues need.
    """

    def __init__(self, basis: XiBasis, a: int, dmax: int, order: int):
        self.basis = basis
        self.a = a
        self.dmax = dmax
        self.order = order
        curve = basis.curve
        bp = curve.branch_points(max(curve.default_order, 2 * order + 8))
        bp = bp[a]
        self.bp = bp
        self.alpha = bp.alpha
        self.field = bp.field
        self.trace = bp.field.trace
        self.beta = basis.dual_basis(a)
        M = 2 * order + 6
        s = bp.involution.truncate(M)
        self.s = s
        self.sp = s.derivative()
        u = bp.zeta.truncate(M)
        self.u = u
        self.up = u.derivative()
        self._e: dict = {}
        self._ebar: dict = {}
        self._theta: dict = {}
        self._b: dict = {}
        # denominator of the kernel: (y(t) - y(s(t))) * x'(t), valuation 2
        y_loc = laurent_expand(curve.y, self.alpha, M)
        dx_loc = laurent_expand(curve.dx, self.alpha, M)
        ydiff = y_loc - y_loc.compose(s)
        self._kden_inv = (ydiff * dx_loc).inverse()

    # basis expansions ---------------------------------------------------------
    def e(self, label: Label) -> LaurentSeries:
        """``Xi_label(alpha + t)``."""
        if label not in self._e:
            self._e[label] = laurent_expand(self.basis.rf(label), self.alpha, self.order)
        return self._e[label]

    def ebar(self, label: Label) -> LaurentSeries:
        """``Xi_label(sigma(alpha + t)) * sigma'(t)``: the pull-back by the involution."""
        if label not in self._ebar:
            f = self.e(label)
            pulled = (f.compose(self.s) * self.sp).truncate(self.order)
            self._ebar[label] = pulled
        return self._ebar[label]

    def e_raw(self, label: Label, order: int) -> LaurentSeries:
        return laurent_expand(self.basis.rf(label), self.alpha, order)

    def theta(self, d: int, order: int | None = None) -> LaurentSeries:
        """Kernel component ``u^(2d+1) / ((y(t) - y(s(t))) x'(t))``.

        The recursion kernel equals ``sum_d xi_{alpha,d}(z0) theta_d(t) dt``.
        """
        if d not in self._theta:
            self._theta[d] = self._kden_inv * (self.u ** (2 * d + 1))
        return self._theta[d]

    def b(self, d: int) -> LaurentSeries:
        """Odd part of the Bergman kernel: ``B(alpha+t, w) ~ sum_d (2d+1) u^(2d) u' xi_{alpha,d}(w)``."""
        if d not in self._b:
            self._b[d] = ((self.u ** (2 * d)) * self.up * (2 * d + 1)).truncate(self.order)
        return self._b[d]

    def bergman_diagonal(self) -> LaurentSeries:
        """``B(alpha + t, sigma(alpha + t)) * sigma'(t) = s'/(t - s)^2``."""
        t = LaurentSeries([1], 1, self.s.order)
        diff = t - self.s
        return (self.sp * (diff * diff).inverse()).truncate(self.order)
