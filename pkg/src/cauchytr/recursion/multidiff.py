"""Symmetric multidifferentials stored as coefficients on products of basis elements."""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Iterable

from ..algebra.ratfunc import RationalFunction
from ..algebra.rational import Q, Rational, rational_str

KIND_XI = "xi"
KIND_YDX = "ydx"
KIND_BERGMAN = "bergman"


def distinct_permutations(key: tuple) -> Iterable[tuple]:
    return set(permutations(key))


class MultiDifferential:
    """Coefficient of ``dz_1 ... dz_n`` of a symmetric multidifferential.

    For ordinary correlators ``data`` maps a sorted tuple of labels to the
    rational coefficient of the symmetrized product
    ``sum over distinct orderings of Xi_{L_1}(z_1) ... Xi_{L_n}(z_n)``.
    ``y dx`` and the Bergman kernel, which are not in that span, carry their
    own kinds.
    """

    def __init__(self, n: int, h: int, basis, data: dict | None = None, kind: str = KIND_XI):
        self.n = n
        self.h = h
        self.basis = basis
        self.kind = kind
        self.data = {k: v for k, v in (data or {}).items() if not v == 0}
        self.symmetry_defects: list = []
        self.warnings: list[str] = []

    # basic queries ---------------------------------------------------------
    @property
    def curve(self):
        return self.basis.curve

    def coefficient(self, labels) -> Rational:
        return self.data.get(tuple(sorted(labels)), Q(0))

    def is_zero(self) -> bool:
        return self.kind == KIND_XI and not self.data

    def __len__(self) -> int:
        return len(self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiDifferential):
            return NotImplemented
        return (self.n, self.h, self.kind) == (other.n, other.h, other.kind) and self.data == other.data

    def __repr__(self) -> str:
        return f"MultiDifferential(n={self.n}, h={self.h}, terms={len(self.data)})"

    def max_degree(self) -> int:
        """Largest ``d`` over all labels, or ``-1`` when empty."""
        return max((lab[1] for key in self.data for lab in key), default=-1)

    def max_pole_order(self) -> int:
        return 2 * self.max_degree() + 2 if self.data else 0

    def labels_used(self) -> set:
        return {lab for key in self.data for lab in key}

    # linear structure -----------------------------------------------------------
    def _combine(self, other: "MultiDifferential", sign: int) -> "MultiDifferential":
        if self.kind != KIND_XI or other.kind != KIND_XI or self.n != other.n:
            raise ValueError("only basis correlators with equal arity combine")
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, Q(0)) + sign * v
        return MultiDifferential(self.n, self.h, self.basis, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "MultiDifferential":
        c = Q(c)
        return MultiDifferential(self.n, self.h, self.basis, {k: v * c for k, v in self.data.items()}, self.kind)

    # evaluation -------------------------------------------------------------------
    def evaluate(self, points) -> Rational:
        """Value of the ``dz_1 ... dz_n`` coefficient at rational points."""
        points = [Q(p) for p in points]
        if len(points) != self.n:
            raise ValueError(f"expected {self.n} points")
        if self.kind == KIND_YDX:
            return self.curve.ydx()(points[0])
        if self.kind == KIND_BERGMAN:
            p, q = points
            return Q(1) / ((p - q) * (p - q))
        cache: dict = {}

        def val(lab, z):
            key = (lab, z)
            if key not in cache:
                cache[key] = self.basis.value(lab, z)
            return cache[key]

        total = Q(0)
        for key, c in self.data.items():
            acc = Q(0)
            for perm in distinct_permutations(key):
                term = Q(1)
                for lab, z in zip(perm, points):
                    term *= val(lab, z)
                acc += term
            total += c * acc
        return total

    def to_rational_function(self, var: str = "z") -> RationalFunction:
        """The one-point correlator as a rational function of its variable."""
        if self.n != 1:
            raise ValueError("only one-point correlators are univariate")
        if self.kind == KIND_YDX:
            return self.curve.ydx().with_var(var)
        out = RationalFunction.constant(Q(0), var)
        for (lab,), c in sorted(self.data.items()):
            out = out + self.basis.rf(lab, var) * c
        return out

    def diagonal(self, var: str = "z") -> RationalFunction:
        """``omega(z, z)`` for a two-point correlator (not defined for the Bergman kernel)."""
        if self.n != 2 or self.kind != KIND_XI:
            raise ValueError("diagonal of a basis two-point correlator only")
        out = RationalFunction.constant(Q(0), var)
        for (l1, l2), c in sorted(self.data.items()):
            m = 1 if l1 == l2 else 2
            out = out + self.basis.rf(l1, var) * self.basis.rf(l2, var) * (c * m)
        return out

    def sections(self, slot_labels: dict | None = None) -> dict:
        """Group by all labels but one: ``{rest: {label: coefficient}}``.

        Each stored key contributes once per distinct label it contains.
        """
        out: dict = {}
        for key, c in self.data.items():
            for lab in set(key):
                rest = list(key)
                rest.remove(lab)
                out.setdefault(tuple(rest), {})[lab] = c
        return out

    # serialization -----------------------------------------------------------------
    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "h": self.h,
            "kind": self.kind,
            "basis": self.basis_description(),
            "terms": [
                {"labels": [list(lab) for lab in key], "coefficient": rational_str(c)}
                for key, c in sorted(self.data.items())
            ],
        }
        if self.kind == KIND_XI and self.n == 1:
            f = self.to_rational_function()
            doc["rational"] = {
                "numerator": [rational_str(c) for c in f.num.c],
                "denominator": [rational_str(c) for c in f.den.c],
            }
        if self.symmetry_defects:
            doc["symmetry_defects"] = len(self.symmetry_defects)
        return doc

    def basis_description(self) -> dict:
        return {
            "definition": "Xi_(a,d,j)(z) = sum over roots alpha of factor a of alpha^j * xi_(alpha,d)(z); "
                          "xi_(alpha,d) dz = -1/(2d+1) d[principal part at alpha of u^-(2d+1)], "
                          "with x - x(alpha) = c2 * u^2",
            "factors": [[rational_str(c) for c in f.c] for f in self.basis.factors],
        }

    @classmethod
    def from_json(cls, doc: dict, basis) -> "MultiDifferential":
        data = {}
        for term in doc.get("terms", []):
            key = tuple(sorted(tuple(int(x) for x in lab) for lab in term["labels"]))
            data[key] = Q(term["coefficient"])
        return cls(doc["n"], doc["h"], basis, data, doc.get("kind", KIND_XI))


def bergman_correlator(basis) -> MultiDifferential:
    return MultiDifferential(2, 0, basis, kind=KIND_BERGMAN)


def ydx_correlator(basis) -> MultiDifferential:
    return MultiDifferential(1, 0, basis, kind=KIND_YDX)


def label_multiplicity(rest: tuple, part: tuple) -> int:
    """Number of position subsets of ``rest`` whose labels form ``part``."""
    from math import comb

    cr, cp = Counter(rest), Counter(part)
    out = 1
    for lab, k in cp.items():
        out *= comb(cr[lab], k)
    return out
