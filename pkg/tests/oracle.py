"""Independent reference values computed with sympy.

Nothing here touches the residue engine: correlators are evaluated at
rational points straight from the recursion kernel, with the local
involution written in closed form and truncated to a Taylor polynomial, and
residues taken by exact division of polynomials in the local parameter.
The kernel sign is the one used by the package,
``omega = -Res (1/2) dS_{p,pbar}(q) / ((y(p) - y(pbar)) dx(p)) [...]``.
"""

from __future__ import annotations

import sympy

t = sympy.Symbol("t")


class OracleCurve:
    def __init__(self, x, y, z, involutions, terms: int = 12):
        """``involutions``: list of ``(alpha, sigma(z))`` with ``sigma`` analytic at ``alpha``.

        ``sigma(alpha + t)`` is replaced by its Taylor polynomial with
        ``terms`` coefficients, ample for the residues taken here.
        """
        self.x, self.y, self.z = x, y, z
        self.involutions = involutions
        self.terms = terms
        self._local = {}

    def local(self, alpha, sigma):
        key = (alpha, sigma)
        if key not in self._local:
            p = alpha + t
            s = sympy.series(sigma.subs(self.z, p), t, 0, self.terms).removeO()
            self._local[key] = (p, sympy.expand(s), sympy.expand(sympy.diff(s, t)))
        return self._local[key]

    def kernel(self, q, alpha, sigma):
        p, s, _ = self.local(alpha, sigma)
        dS = 1 / (q - p) - 1 / (q - s)
        dx = sympy.diff(self.x, self.z).subs(self.z, p)
        return -sympy.Rational(1, 2) * dS / ((self.y.subs(self.z, p) - self.y.subs(self.z, s)) * dx)

    @staticmethod
    def residue(expr):
        """Coefficient of ``1/t`` of a rational expression in ``t`` with rational coefficients."""
        num, den = sympy.fraction(sympy.together(expr))
        N = sympy.Poly(sympy.expand(num), t).all_coeffs()[::-1]
        D = sympy.Poly(sympy.expand(den), t).all_coeffs()[::-1]
        vn = next(i for i, c in enumerate(N) if c != 0)
        vd = next(i for i, c in enumerate(D) if c != 0)
        N, D = N[vn:], D[vd:]
        k = vd - vn - 1  # wanted coefficient of N/D once the valuations are removed
        if k < 0:
            return sympy.Integer(0)
        q = []
        for i in range(k + 1):
            acc = N[i] if i < len(N) else 0
            acc -= sum(q[j] * D[i - j] for j in range(max(0, i - len(D) + 1), i))
            q.append(sympy.Rational(acc) / D[0])
        return q[k]

    def omega11(self, q):
        total = 0
        for alpha, sigma in self.involutions:
            p, s, ds = self.local(alpha, sigma)
            B = ds / (p - s) ** 2
            total += self.residue(self.kernel(q, alpha, sigma) * B)
        return sympy.nsimplify(total)

    def omega3(self, q, p1, p2):
        total = 0
        for alpha, sigma in self.involutions:
            p, s, ds = self.local(alpha, sigma)
            B = lambda a, b, da=1: da / (a - b) ** 2
            br = B(p, p1) * B(s, p2, ds) + B(p, p2) * B(s, p1, ds)
            total += self.residue(self.kernel(q, alpha, sigma) * br)
        return sympy.nsimplify(total)

    def omega3_closed(self, z1, z2, z3):
        """``sum_alpha Res B B B / (dx dy)`` at the simple zeros of ``dx``."""
        total = 0
        x2 = sympy.diff(self.x, self.z, 2)
        y1 = sympy.diff(self.y, self.z)
        for alpha, _ in self.involutions:
            prod = 1
            for w in (z1, z2, z3):
                prod *= 1 / (w - alpha) ** 2
            total += prod / (x2.subs(self.z, alpha) * y1.subs(self.z, alpha))
        return sympy.nsimplify(total)

    def omega3_expr(self, a, b, c):
        """The closed form of ``omega_3`` as an expression, usable inside a residue."""
        total = 0
        x2 = sympy.diff(self.x, self.z, 2)
        y1 = sympy.diff(self.y, self.z)
        for alpha, _ in self.involutions:
            total += 1 / ((a - alpha) ** 2 * (b - alpha) ** 2 * (c - alpha) ** 2
                          * x2.subs(self.z, alpha) * y1.subs(self.z, alpha))
        return total

    def omega4(self, q, p1, p2, p3):
        total = 0
        pts = (p1, p2, p3)
        for alpha, sigma in self.involutions:
            p, s, ds = self.local(alpha, sigma)
            br = 0
            for i in range(3):
                j, k = [pts[m] for m in range(3) if m != i]
                br += ds / (p - pts[i]) ** 2 * self.omega3_expr(s, j, k) * 1
                br += ds / (s - pts[i]) ** 2 * self.omega3_expr(p, j, k)
            total += self.residue(self.kernel(q, alpha, sigma) * br)
        return sympy.nsimplify(total)


def z2_oracle(y_coeffs=(0, 1)):
    z = sympy.Symbol("z")
    y = sum(sympy.Rational(c) * z**k for k, c in enumerate(y_coeffs))
    return OracleCurve(z**2, y, z, [(0, -z)])


def z3_oracle(y_coeffs=(0, 1)):
    z = sympy.Symbol("z")
    y = sum(sympy.Rational(c) * z**k for k, c in enumerate(y_coeffs))
    root = sympy.sqrt(12 - 3 * z**2)
    return OracleCurve(z**3 - 3 * z, y, z, [(1, (-z + root) / 2), (-1, (-z - root) / 2)])
