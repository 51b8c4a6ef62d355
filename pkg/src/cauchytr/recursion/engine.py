"""Topological recursion on the odd principal-part basis.

For ``2h + n - 2 > 0`` the correlator with first variable ``z0`` and rest
``K`` (``|K| = n - 1``) is

    omega(z0, K) = - sum_alpha Res_{z -> alpha} K(z0, z) [ omega_{h-1}(z, sigma z, K)
                    + sum' omega_m(z, J) omega_{h-m}(sigma z, K \\ J) ],

where ``sum'`` runs over ``0 <= m <= h`` and all subsets ``J`` of ``K``,
omitting any factor ``y dx``.  The kernel decomposes as
``K(z0, alpha + t) = sum_d xi_{alpha,d}(z0) theta_d(t) dt``, so each output
coefficient is a residue of ``theta_d`` against the bracket.  Only the odd
part of a Bergman factor contributes, which lets it be written on the same
basis as every other factor.
"""

from __future__ import annotations

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor

from ..algebra.rational import Q
from ..algebra.series import LaurentSeries
from ..errors import InsufficientPrecision
from .basis import XiBasis
from .cache import CorrelatorCache
from .multidiff import (
    KIND_BERGMAN,
    KIND_XI,
    MultiDifferential,
    bergman_correlator,
    label_multiplicity,
    ydx_correlator,
)

log = logging.getLogger(__name__)

SPLIT_FULL = "full"
SPLIT_LITERAL = "literal"
MAX_ORDER_DOUBLINGS = 4


def residue_of_product(G: LaurentSeries, H: LaurentSeries):
    """``Res_t G(t) H(t) dt`` with a precision check on both factors."""
    gv, hv = G.val, H.val
    if G.order < -1 - hv or H.order < -1 - gv:
        raise InsufficientPrecision("factors too short for the residue of their product")
    gc, hc = G.c, H.c
    lo = max(gv, -hv - len(hc))
    hi = min(gv + len(gc) - 1, -1 - hv)
    acc = 0
    for k in range(lo, hi + 1):
        acc += gc[k - gv] * hc[-1 - k - hv]
    return acc


def linear_combination(terms, order: int) -> LaurentSeries:
    """``sum c_i S_i`` truncated at ``order`` (must not exceed any input order)."""
    terms = [(c, s) for c, s in terms if not c == 0]
    if not terms:
        return LaurentSeries.zero(order)
    for _, s in terms:
        if s.order < order:
            raise InsufficientPrecision("basis expansion shorter than required")
    lo = min(s.val for _, s in terms)
    out = [0] * (order - lo + 1)
    for c, s in terms:
        base = s.val - lo
        for i, x in enumerate(s.c[: order - s.val + 1]):
            out[base + i] += c * x
    return LaurentSeries._raw([Q(0) if v == 0 else v for v in out], lo, order)


def _merge(r1: tuple, r2: tuple) -> tuple:
    return tuple(sorted(r1 + r2))


def _remove(key: tuple, lab) -> tuple:
    rest = list(key)
    rest.remove(lab)
    return tuple(rest)


_ACTIVE = None  # engine and request seen by forked workers


def _worker(args):
    engine, n_out, h, order = _ACTIVE
    return engine._factor_task(args, n_out, h, order)


class RecursionEngine:
    """Computes and memoizes correlators of one spectral curve."""

    def __init__(self, curve, *, splitting: str = SPLIT_FULL, jobs: int = 1, order: int | None = None,
                 cache_dir=None, max_order: int | None = None):
        if splitting not in (SPLIT_FULL, SPLIT_LITERAL):
            raise ValueError(f"unknown splitting rule {splitting!r}")
        self.curve = curve
        self.basis = XiBasis(curve)
        self.splitting = splitting
        self.jobs = max(1, int(jobs))
        self.order = order
        self.max_order = max_order
        self.store = CorrelatorCache(curve, self.basis, cache_dir, splitting)
        self.cache: dict = {(1, 0): ydx_correlator(self.basis), (2, 0): bergman_correlator(self.basis)}
        self.orders_used: dict = {}

    # public -----------------------------------------------------------------
    def omega(self, n: int, h: int) -> MultiDifferential:
        if n < 1 or h < 0:
            raise ValueError("need n >= 1 and h >= 0")
        key = (n, h)
        if key not in self.cache:
            stored = self.store.get(n, h)
            if stored is None:
                for dep in self._dependencies(n, h):
                    self.omega(*dep)
                stored = self._compute(n, h)
                self.store.put(stored, self.orders_used.get(key))
            elif key in self.store.orders:
                self.orders_used[key] = self.store.orders[key]
            self.cache[key] = stored
        return self.cache[key]

    def known(self) -> list:
        return sorted(self.cache)

    # structure of the recursion ------------------------------------------------------
    def _m_range(self, h: int):
        # the literal range 1..h-1 is empty at h = 0, so genus zero always uses the full rule
        if self.splitting == SPLIT_LITERAL and h >= 1:
            return range(1, h)
        return range(h + 1)

    def _product_types(self, n_out: int, h: int):
        n = n_out - 1
        out = []
        for j in range(n + 1):
            for m in self._m_range(h):
                t1, t2 = (j + 1, m), (n - j + 1, h - m)
                if t1 == (1, 0) or t2 == (1, 0):
                    continue
                out.append((t1, t2))
        return out

    def _dependencies(self, n_out: int, h: int):
        deps = set()
        if h >= 1:
            deps.add((n_out + 1, h - 1))
        for t1, t2 in self._product_types(n_out, h):
            deps.add(t1)
            deps.add(t2)
        deps.discard((n_out, h))
        return sorted(deps, key=lambda t: (2 * t[1] + t[0], t))

    # computation -------------------------------------------------------------
    def _degree_needs(self, n_out: int, h: int) -> tuple[int, int]:
        top = 3 * h - 3 + n_out + 1  # one above the expected bound, as a monitor
        din = 0
        for dep in self._dependencies(n_out, h):
            w = self.cache[dep]
            if w.kind == KIND_XI:
                din = max(din, w.max_degree())
        return top, max(din, top)

    def _compute(self, n_out: int, h: int) -> MultiDifferential:
        top, dall = self._degree_needs(n_out, h)
        order = self.order or (2 * dall + 6)
        if self.max_order is not None:
            order = min(order, self.max_order)
        nf = len(self.basis.factors)
        results = None
        tried = None
        for _ in range(MAX_ORDER_DOUBLINGS + 1):
            if self.max_order is not None and order > self.max_order:
                break
            tried = order
            try:
                results = self._run_factors(range(nf), n_out, h, order, dall)
                self.orders_used[(n_out, h)] = order
                break
            except InsufficientPrecision as exc:
                log.info("precision %d too low for (%d,%d): %s; doubling", order, n_out, h, exc)
                order *= 2
        if results is None:
            cap = f" (cap {self.max_order})" if self.max_order is not None else ""
            raise InsufficientPrecision(f"largest series order tried {tried}{cap} is insufficient for ({n_out},{h})")
        return self._assemble(n_out, h, results, top)

    def _run_factors(self, factors, n_out, h, order, dall):
        factors = list(factors)
        for a in factors:
            self.basis.frame(a, dall, order)  # build before forking so workers share it
        if self.jobs > 1 and len(factors) > 1:
            global _ACTIVE
            _ACTIVE = (self, n_out, h, order)
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=min(self.jobs, len(factors)), mp_context=ctx) as pool:
                out = list(pool.map(_worker, factors))
            _ACTIVE = None
            return out
        return [self._factor_task(a, n_out, h, order) for a in factors]

    def _frame(self, a, n_out, h, order):
        _, dall = self._degree_needs(n_out, h)
        return self.basis.frame(a, dall, order)

    def _factor_task(self, a: int, n_out: int, h: int, order: int) -> dict:
        """All residues at the a-th factor: ``{(rest, d0): value in Q(alpha)}``."""
        F = self._frame(a, n_out, h, order)
        top, _ = self._degree_needs(n_out, h)
        dl = range(top + 1)
        theta = [F.theta(d) for d in dl]
        acc: dict = {}

        def add(R, d0, v):
            if not v == 0:
                k = (R, d0)
                acc[k] = acc[k] + v if k in acc else v

        gcache: dict = {}
        hcache: dict = {}
        for t1, t2 in self._product_types(n_out, h):
            if t1 not in gcache:
                gcache[t1] = self._local(F, t1, top, barred=False)
            if t2 not in hcache:
                hcache[t2] = {
                    r: [theta[d] * g for d in dl]
                    for r, g in self._local(F, t2, top, barred=True).items()
                }
            G1, H2 = gcache[t1], hcache[t2]
            for r1, g in G1.items():
                for r2, hs in H2.items():
                    R = _merge(r1, r2)
                    mult = label_multiplicity(R, r1)
                    for d0 in dl:
                        v = residue_of_product(g, hs[d0])
                        if not v == 0:
                            add(R, d0, v * mult)
        if h >= 1:
            self._tterm(F, n_out, h, theta, dl, add)
        return acc

    def _tterm(self, F, n_out, h, theta, dl, add):
        src = self.cache[(n_out + 1, h - 1)]
        if src.kind == KIND_BERGMAN:
            diag = F.bergman_diagonal()
            for d0 in dl:
                add((), d0, residue_of_product(theta[d0], diag))
            return
        groups: dict = {}
        for S, c in src.data.items():
            for l1 in set(S):
                S1 = _remove(S, l1)
                for l2 in set(S1):
                    groups.setdefault((_remove(S1, l2), l1), []).append((c, l2))
        te: dict = {}
        for (r, l1), terms in groups.items():
            V = linear_combination([(c, F.ebar(l2)) for c, l2 in terms], F.order)
            for d0 in dl:
                if (d0, l1) not in te:
                    te[(d0, l1)] = theta[d0] * F.e(l1)
                add(r, d0, residue_of_product(te[(d0, l1)], V))

    def _local(self, F, typ, top, *, barred: bool) -> dict:
        """Expansions of a factor correlator at ``F``: ``{rest: series in t}``."""
        w = self.cache[typ]
        if w.kind == KIND_BERGMAN:
            sign = -1 if barred else 1
            out = {}
            for d in range(top + 1):
                b = F.b(d)
                for j, beta in enumerate(F.beta):
                    out[((F.a, d, j),)] = b * (beta * sign)
            return out
        pick = F.ebar if barred else F.e
        return {
            rest: linear_combination([(c, pick(lab)) for lab, c in sorted(parts.items())], F.order)
            for rest, parts in w.sections().items()
        }

    def _assemble(self, n_out: int, h: int, results, top: int) -> MultiDifferential:
        deposits: dict = {}
        for a, acc in enumerate(results):
            beta = self.basis.dual_basis(a)
            trace = self.basis.branch(a, self.curve.default_order).field.trace
            rational = len(beta) == 1
            for (R, d0), c in acc.items():
                c = -c
                for j0, b in enumerate(beta):
                    v = _rat(c) if rational else trace(c * b)
                    if v == 0:
                        continue
                    L0 = (a, d0, j0)
                    deposits.setdefault(_merge(R, (L0,)), {})[L0] = v
        out = MultiDifferential(n_out, h, self.basis)
        data = {}
        for S, vals in deposits.items():
            labs = sorted(set(S))
            ref = vals.get(labs[0], Q(0))
            for lab in labs[1:]:
                other = vals.get(lab, Q(0))
                if not other == ref:
                    out.symmetry_defects.append((S, labs[0], lab, ref, other))
            if not ref == 0:
                data[S] = ref
        out.data = data
        expected = top - 1
        over = [S for S in data if any(lab[1] > expected for lab in S)]
        if over:
            msg = f"({n_out},{h}): {len(over)} terms exceed the expected pole order {2 * expected + 2}"
            log.warning(msg)
            out.warnings.append(msg)
        return out


def _rat(c):
    if hasattr(c, "to_rational"):
        return c.to_rational()
    return Q(c)
