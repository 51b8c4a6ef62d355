"""``cauchytr``: batch front end printing exact JSON envelopes.

Exit codes: 0 success, 1 usage/input/IO error (including a cache file that
belongs to another curve), 2 failed verification or a curve outside the
domain of the request, 3 series precision exhausted below ``--max-order``.
"""

from __future__ import annotations

import json
import sys
import time

import click

from .. import __version__
from ..algebra.rational import rational_str
from ..errors import CacheMismatch, CauchyTRError, InsufficientPrecision, NotCauchy, NotCubic, RamifiedInfinity
from ..recursion.cache import CACHE_ENV, default_cache_dir
from .specfile import SpecError, curve_from_spec, read_spec
from .suites import SUITES, run_suites, summary

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_PRECISION = 0, 1, 2, 3


class Abort(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def emit(doc: dict) -> None:
    click.echo(json.dumps(doc, sort_keys=True, indent=1))


def envelope(curve, command: str, params: dict, payload, *, orders=None, execution=None) -> dict:
    doc = {
        "tool": {"name": "cauchytr", "version": __version__},
        "fingerprint": curve.fingerprint,
        "request": {"command": command, "parameters": params},
        "payload": payload,
        "series_orders": {f"{n},{h}": o for (n, h), o in sorted((orders or {}).items())},
    }
    if execution is not None:
        doc["execution"] = execution
    return doc


def load_curve(spec: str, order: int | None = None):
    try:
        doc = read_spec(spec)
        return curve_from_spec(doc, order=order)
    except SpecError as exc:
        raise Abort(EXIT_USAGE, str(exc)) from exc
    except CauchyTRError as exc:
        raise Abort(EXIT_USAGE, f"curve not admitted: {type(exc).__name__}: {exc}") from exc


def make_engine(curve, *, jobs=1, order=None, max_order=None, cache_dir=None):
    from ..recursion import RecursionEngine

    return RecursionEngine(curve, jobs=jobs, order=order, max_order=max_order,
                           cache_dir=cache_dir if cache_dir is not None else default_cache_dir())


def run(fn):
    """Map library errors onto the exit-code contract; diagnostics go to standard error."""
    try:
        fn()
    except Abort as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.code)
    except CacheMismatch as exc:
        click.echo(f"error: cache: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except InsufficientPrecision as exc:
        click.echo(f"error: precision exhausted: {exc}", err=True)
        sys.exit(EXIT_PRECISION)
    except (RamifiedInfinity, NotCauchy, NotCubic) as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)
    except CauchyTRError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_FAIL)


engine_options = [
    click.option("--order", type=int, default=None, help="Initial series order (default: chosen per correlator)."),
    click.option("--max-order", type=int, default=None, help="Give up with exit 3 beyond this series order."),
    click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes across branch points."),
    click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
                 help=f"On-disk correlator cache (default: ${CACHE_ENV})."),
]


def with_engine_options(f):
    for opt in reversed(engine_options):
        f = opt(f)
    return f


def _execution(engine, t0, jobs, cache_dir):
    return {"jobs": jobs, "cache_dir": cache_dir or default_cache_dir(),
            "cache_hits": [list(k) for k in engine.store.hits], "seconds": round(time.time() - t0, 3)}


@click.group()
@click.version_option(__version__, prog_name="cauchytr")
def cli():
    """Exact topological recursion on rational spectral curves."""


@cli.command()
@click.argument("spec")
def check(spec):
    """Admission, branch points and (for three sheets) the cubic structure of SPEC.

    SPEC is a curve spec file or one of the bundled names z2, z3, builder.
    """
    def go():
        try:
            doc = read_spec(spec)
        except SpecError as exc:
            raise Abort(EXIT_USAGE, str(exc)) from exc
        report = {"admitted": False}
        try:
            curve = curve_from_spec(doc)
        except SpecError as exc:
            raise Abort(EXIT_USAGE, str(exc)) from exc
        except CauchyTRError as exc:
            report["violation"] = {"rule": type(exc).__name__, "message": str(exc)}
            click.echo(json.dumps({"payload": report}, sort_keys=True, indent=1))
            click.echo(f"curve not admitted: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_FAIL)
        report.update(_inventory(curve))
        ok = True
        if curve.degree == 3:
            from ..cauchy import structure_check

            rep = structure_check(curve)
            report["not_cubic"] = False
            report["cubic_structure"] = rep.to_json()
            report["cauchy"] = rep.passed
            ok = rep.consistent
        else:
            report["not_cubic"] = True
            report["notice"] = f"sheet degree {curve.degree}: two-matrix checks skipped"
        report["passed"] = ok
        emit(envelope(curve, "check", {}, report))
        sys.exit(EXIT_OK if ok else EXIT_FAIL)

    run(go)


def _inventory(curve) -> dict:
    return {
        "admitted": True,
        "sheet_degree": curve.degree,
        "base_point": rational_str(curve.base_point),
        "branch_points": [bp.describe() for bp in curve.branch_points()],
        "infinities": [p.describe() for p in curve.infinities],
        "ramified_infinities": sum(1 for p in curve.infinities if p.ramification > 1),
    }


@cli.command()
@click.argument("spec")
@click.argument("n", type=int)
@click.argument("h", type=int)
@with_engine_options
@click.option("--verify", "verify_", is_flag=True, help="Run the structural checks on the result; exit 2 on failure.")
@click.option("--splitting", type=click.Choice(["full", "literal"]), default="full", show_default=True)
def omega(spec, n, h, order, max_order, jobs, cache_dir, verify_, splitting):
    """The correlator with N points at order H, in the Xi basis."""
    def go():
        if n < 1 or h < 0 or 2 * h + n - 2 <= 0:
            raise Abort(EXIT_USAGE, "need n >= 1, h >= 0 and 2h + n - 2 > 0 "
                                    "(y dx and the Bergman kernel are inputs, not outputs)")
        curve = load_curve(spec, order=None)
        t0 = time.time()
        from ..recursion import RecursionEngine

        engine = RecursionEngine(curve, splitting=splitting, jobs=jobs, order=order, max_order=max_order,
                                 cache_dir=cache_dir if cache_dir is not None else default_cache_dir())
        w = engine.omega(n, h)
        payload = {"omega": w.to_json()}
        ok = True
        if verify_:
            from ..recursion import verify_structure

            rep = verify_structure(w, curve=curve, n=n, h=h)
            payload["verification"] = rep.to_json()
            ok = rep.passed
        params = {"n": n, "h": h, "splitting": splitting, "order": order, "max_order": max_order,
                  "verify": verify_}
        emit(envelope(curve, "omega", params, payload, orders={(n, h): engine.orders_used.get((n, h))},
                      execution=_execution(engine, t0, jobs, cache_dir)))
        sys.exit(EXIT_OK if ok else EXIT_FAIL)

    run(go)


@cli.command("free-energy")
@click.argument("spec")
@click.argument("h", type=int)
@with_engine_options
@click.option("--float", "digits", type=int, default=None, help="Also render logarithms at this many digits.")
@click.option("--base-point", default=None, help="Base point o of the primitive of y dx (h >= 2).")
def free_energy(spec, h, order, max_order, jobs, cache_dir, digits, base_point):
    """The free energy at order H: rational for H >= 2, a logarithmic number for H = 0."""
    def go():
        if h == 1:
            raise Abort(EXIT_USAGE, "the order-one free energy is only available through its gradient; "
                                    "use `cauchytr f1-gradient`")
        if h < 0:
            raise Abort(EXIT_USAGE, "h must be >= 0")
        curve = load_curve(spec)
        t0 = time.time()
        params = {"h": h, "order": order, "max_order": max_order, "float": digits, "base_point": base_point}
        if h == 0:
            from ..cauchy import extract_model
            from ..energy.moduli import free_energy_0

            model = extract_model(curve)
            value = free_energy_0(curve, model)
            payload = {"F": value.to_json(digits), "model": model.to_json()}
            emit(envelope(curve, "free-energy", params, payload,
                          execution={"jobs": jobs, "seconds": round(time.time() - t0, 3)}))
            return
        from ..energy.hop import free_energy_h

        engine = make_engine(curve, jobs=jobs, order=order, max_order=max_order, cache_dir=cache_dir)
        value = free_energy_h(curve, h, base_point, engine=engine)
        payload = {"F": {"rational": rational_str(value)}}
        if digits:
            from ..energy.logvalue import LogValue

            payload["F"] = LogValue(value).to_json(digits)
        emit(envelope(curve, "free-energy", params, payload, orders=engine.orders_used,
                      execution=_execution(engine, t0, jobs, cache_dir)))

    run(go)


@cli.command("f1-gradient")
@click.argument("spec")
@click.option("--direction", "names", multiple=True,
              help="Modulus direction (T, eta1, eta2, tm1_1, tm1_2, t1_j, t2_j); default: all.")
@click.option("--float", "digits", type=int, default=None)
@with_engine_options
def f1_gradient_cmd(spec, names, digits, order, max_order, jobs, cache_dir):
    """Derivatives of the order-one free energy, each computed two independent ways."""
    def go():
        from ..cauchy import extract_model
        from ..energy.moduli import ModuliDirection, f1_gradient, gradient_json
        from .suites import directions

        curve = load_curve(spec)
        t0 = time.time()
        model = extract_model(curve)
        engine = make_engine(curve, jobs=jobs, order=order, max_order=max_order, cache_dir=cache_dir)
        try:
            dirs = [ModuliDirection.parse(s) for s in names] if names else directions(curve, model)
        except ValueError as exc:
            raise Abort(EXIT_USAGE, str(exc)) from exc
        rows = [gradient_json(f1_gradient(curve, d, engine), digits) for d in dirs]
        ok = all(r["agree"] for r in rows)
        emit(envelope(curve, "f1-gradient", {"directions": [d.name() for d in dirs], "float": digits},
                      {"gradient": rows, "agree": ok}, orders=engine.orders_used,
                      execution=_execution(engine, t0, jobs, cache_dir)))
        sys.exit(EXIT_OK if ok else EXIT_FAIL)

    run(go)


@cli.command()
@click.argument("spec")
@click.option("--suite", "suites", multiple=True, type=click.Choice(SUITES + ("all",)), default=("all",),
              show_default=True)
@click.option("--max-level", "L", type=int, default=6, show_default=True, help="Check every (n, h) with 2h + n <= L.")
@click.option("--dilaton-sign", type=click.Choice(["stated", "corrected"]), default="stated", show_default=True,
              help="'corrected' negates the right-hand side of the dilaton identity.")
@with_engine_options
def verify(spec, suites, L, dilaton_sign, order, max_order, jobs, cache_dir):
    """Run identity suites; exit 2 if any identity fails."""
    def go():
        names = SUITES if "all" in suites else tuple(dict.fromkeys(suites))
        curve = load_curve(spec)
        t0 = time.time()
        engines = {}

        def engine_for(c):
            if c.fingerprint not in engines:
                engines[c.fingerprint] = make_engine(c, jobs=jobs, order=order, max_order=max_order,
                                                     cache_dir=cache_dir)
            return engines[c.fingerprint]

        engine = engine_for(curve)
        results = run_suites(curve, engine, names, L, engine_for=engine_for,
                             dilaton_sign=1 if dilaton_sign == "stated" else -1)
        summ = summary(results)
        for name, entries in results.items():
            for e in entries:
                if e["status"] == "skipped":
                    click.echo(f"notice: {name}: {e['identity']}: {e.get('notice', 'skipped')}", err=True)
        orders = {k: v for k, v in engine.orders_used.items() if 2 * k[1] + k[0] <= L + 1}
        params = {"suites": list(names), "max_level": L, "dilaton_sign": dilaton_sign, "order": order,
                  "max_order": max_order}
        emit(envelope(curve, "verify", params, {"summary": summ, "results": results}, orders=orders,
                      execution=_execution(engine, t0, jobs, cache_dir)))
        sys.exit(EXIT_OK if summ["passed"] else EXIT_FAIL)

    run(go)


@cli.command()
@click.argument("builder_spec", required=False)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
def build(builder_spec, output):
    """Draw a two-matrix curve from a builder spec (default: the bundled fixture ansatz)."""
    def go():
        from ..cauchy import BuilderSpec, build_cauchy_curve
        from .specfile import spec_of_curve

        if builder_spec:
            try:
                bs = BuilderSpec.from_json(json.loads(open(builder_spec).read()))
            except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
                raise Abort(EXIT_USAGE, f"bad builder spec: {exc}") from exc
        else:
            bs = BuilderSpec.fixture()
        curve = build_cauchy_curve(bs)
        doc = spec_of_curve(curve)
        if output:
            with open(output, "w") as fh:
                fh.write(json.dumps(doc, indent=2) + "\n")
        emit(envelope(curve, "build", bs.to_json(), {"curve": doc}))

    run(go)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
