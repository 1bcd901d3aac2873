"""
a2stab command-line interface.

Thin subcommands over the core modules: braid words and autoequivalences,
exchange graphs (DOT, SVG, JSON), periods and their differential equations,
the conformal maps f_n and the regions R_n, stability conditions and the
fundamental domain, and period monodromy.

Output goes to stdout as JSON (or DOT/SVG text); logs go to stderr. Exit
codes: 0 success, 2 malformed input, 3 domain error (with a JSON error
object on stdout), 1 anything else.
"""

import argparse
import functools
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _pkg_version
from time import monotonic
from typing import Any

import numpy as np
from pydantic import BaseModel, ValidationError

from a2stab.core import braidgroup as bg
from a2stab.core import periods as pd
from a2stab.core import schwarz
from a2stab.core import stability as st
from a2stab.core import tilting as tl
from a2stab.errors import A2StabError, InvalidLevelError, WordParseError
from a2stab.models import (
    AutEqOutput,
    BraidEvalOutput,
    BraidWordOutput,
    ClassifyOutput,
    ErrorOutput,
    ExponentsOutput,
    GraphOutput,
    InverseMapOutput,
    MapOutput,
    MonodromyOutput,
    PeriodPairOutput,
    PeriodValueOutput,
    ReduceOutput,
    RegionOutput,
    RenderSpec,
    ResidualOutput,
    RoundTripOutput,
    StabilityOutput,
    WalkOutput,
    cplx,
    real,
)
from a2stab.render.dot import to_dot
from a2stab.render.svg import graph_svg, layout_positions, region_svg
from a2stab.utils.logging_config import configure_logging
from a2stab.utils.metrics import metrics
from a2stab.utils.settings import settings
from a2stab.utils.validation import Level, is_infinite, parse_complex, parse_level, parse_word

try:
    _APP_VERSION = _pkg_version("a2stab")
except PackageNotFoundError:
    _APP_VERSION = "unknown"

logger = logging.getLogger(__name__)

Output = BaseModel | str


# ---------------------------------------------------------------------------
# Output formatting and error mapping
# ---------------------------------------------------------------------------


def _format_number(x: float) -> str:
    return format(x, ".17g")


def format_json(value: Any, indent: int = 2, level: int = 0) -> str:
    """
    Serialize plain JSON data with every float written to 17 significant digits.

    Raises
    ------
    TypeError
        For values that are not JSON data or for non-finite floats.

    """
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise TypeError(f"non-finite float {value!r} is not valid JSON")
        return _format_number(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {format_json(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(format_json(v) for v in value) + "]"
        items = [f"{inner}{format_json(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _render(result: Output) -> str:
    if isinstance(result, str):
        return result
    return format_json(result.model_dump(mode="python")) + "\n"


def _format_validation_error(exc: ValidationError) -> str:
    """Return a concise summary of a Pydantic ValidationError."""
    parts = []
    for error in exc.errors():
        loc = ".".join(str(x) for x in error["loc"]) if error["loc"] else "input"
        parts.append(f"{loc}: {error['msg']}")
    return "; ".join(parts)


def _emit_error(code: str, message: str, context: dict[str, Any] | None = None) -> None:
    sys.stdout.write(_render(ErrorOutput(code=code, message=message, context=_plain(context or {}))))


def _plain(context: dict[str, Any]) -> dict[str, Any]:
    """Context values that JSON can carry; anything else is written as its repr."""
    out: dict[str, Any] = {}
    for key, value in context.items():
        if isinstance(value, float) and not math.isfinite(value):
            out[key] = real(value)
        elif isinstance(value, complex):
            out[key] = cplx(value)
        elif value is None or isinstance(value, (bool, int, float, str)):
            out[key] = value
        elif isinstance(value, (list, tuple)) and all(isinstance(v, (int, float, str)) for v in value):
            out[key] = [real(v) if isinstance(v, float) else v for v in value]
        else:
            out[key] = repr(value)
    return out


def _handle_errors(func: Callable[[argparse.Namespace], Output]) -> Callable[[argparse.Namespace], int]:
    """Run a subcommand, print its output and map exceptions to exit codes.

    Exit codes:
    - ``0`` success.
    - ``2`` malformed input (word, level, complex literal, argument value); error object on stdout.
    - ``3`` domain error raised by the core modules; error object on stdout.
    - ``1`` unexpected error; details are in the log.
    """

    @functools.wraps(func)
    def wrapper(args: argparse.Namespace) -> int:
        name = args.command_name
        start = monotonic()
        metrics.record_command(name)
        logger.info("command=%s start", name)
        try:
            sys.stdout.write(_render(func(args)))
            return 0

        except (WordParseError, InvalidLevelError) as exc:
            logger.warning("command=%s parse_error: %s", name, exc.message)
            metrics.record_error(name, exc.code)
            _emit_error(exc.code, exc.message, exc.context)
            return 2

        except A2StabError as exc:
            logger.error("command=%s %s: %s", name, exc.code, exc.message)
            metrics.record_error(name, exc.code)
            _emit_error(exc.code, exc.message, exc.context)
            return 3

        except ValidationError as exc:
            detail = _format_validation_error(exc)
            logger.warning("command=%s validation_error: %s", name, detail)
            metrics.record_error(name, "validation_error")
            _emit_error("validation_error", detail)
            return 2

        except ValueError as exc:
            logger.warning("command=%s invalid_argument: %s", name, exc)
            metrics.record_error(name, "invalid_argument")
            _emit_error("invalid_argument", str(exc))
            return 2

        except Exception as exc:  # noqa: BLE001
            logger.exception("command=%s unexpected_error: %s", name, exc)
            metrics.record_error(name, "unexpected_error")
            return 1

        finally:
            logger.info("command=%s done in %.1f ms", name, (monotonic() - start) * 1000)

    return wrapper


# ---------------------------------------------------------------------------
# Shared argument helpers
# ---------------------------------------------------------------------------


def _level_label(n: Level) -> int | str:
    return "inf" if is_infinite(n) else int(n)


def _engine(args: argparse.Namespace) -> pd.PeriodEngine:
    nodes = getattr(args, "nodes", None)
    return pd.PeriodEngine(pd.QuadConfig.from_settings(node_count=nodes))


def _auteq_output(phi: bg.AnyAutEq) -> AutEqOutput:
    psl2 = bg.psl2_quotient(phi)
    data: dict[str, Any] = {
        "n": _level_label(phi.n),
        "kmatrix": [list(row) for row in phi.kmatrix()],
        "psl2": [list(row) for row in psl2.matrix],
        "projective_order": psl2.order(),
    }
    if isinstance(phi, bg.AutEqInfty):
        data["sigma_power"] = phi.sigma_power
    else:
        data.update(
            word=bg.recover_word(phi.braid),
            shift=phi.shift,
            sl2=[list(row) for row in phi.braid.sl2],
            expsum=phi.braid.expsum,
        )
    return AutEqOutput.model_validate(data)


def _auteq_from_args(n: Level, word: str, shift: int, sigma_power: int) -> bg.AnyAutEq:
    if is_infinite(n):
        return bg.AutEqInfty(sigma_power)
    return bg.auteq_from_word(n, word, shift)


def _stability_output(sigma: st.StabilityPoint) -> StabilityOutput:
    return StabilityOutput.model_validate(sigma.to_dict())


def _point_from_args(n: Level, args: argparse.Namespace) -> st.StabilityPoint:
    """
    The stability condition named on the command line: either phases of S1
    and S2 (``--phase1/--phase2``) or charges ``--z1/--z2`` of the simples of
    the heart (Φ, k) given by ``--word/--shift`` (or ``--sigma-power`` at n = inf).
    """
    if args.phase1 is not None or args.phase2 is not None:
        if args.phase1 is None or args.phase2 is None:
            raise ValueError("--phase1 and --phase2 go together")
        return st.from_phases(n, args.phase1, args.phase2, args.modulus1, args.modulus2)
    if args.z1 is None or args.z2 is None:
        raise ValueError("give --z1 and --z2, or --phase1 and --phase2")
    phi = _auteq_from_args(n, args.word, args.shift, args.sigma_power)
    heart, swapped = tl.canonicalize(tl.Heart(phi, args.k))
    z1, z2 = parse_complex(args.z1), parse_complex(args.z2)
    return st.make_stability(heart, *((z2, z1) if swapped else (z1, z2)))


def _g_or_none(sigma: st.StabilityPoint) -> list[float] | None:
    try:
        return cplx(st.g_coordinate(sigma))
    except A2StabError:
        return None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


@_handle_errors
def cmd_braid(args: argparse.Namespace) -> Output:
    """Evaluate braid words, or build and compose canonical autoequivalences."""
    if args.action == "eval":
        words = [
            BraidWordOutput(
                word=w,
                expanded=parse_word(w),
                canonical_word=bg.recover_word(element),
                sl2=[list(row) for row in element.sl2],
                expsum=element.expsum,
            )
            for w, element in ((w, bg.braid_eval(w)) for w in args.words)
        ]
        equal = None
        if len(words) > 1:
            equal = all((w.sl2, w.expsum) == (words[0].sl2, words[0].expsum) for w in words)
        return BraidEvalOutput(words=words, equal=equal)
    n = parse_level(args.n)
    phi = _auteq_from_args(n, args.word, args.shift, args.sigma_power)
    if args.action == "compose":
        psi = _auteq_from_args(n, args.then_word, args.then_shift, args.then_sigma_power)
        phi = psi.compose(phi)  # type: ignore[arg-type]
    return _auteq_output(phi)


@_handle_errors
def cmd_graph(args: argparse.Namespace) -> Output:
    """Exchange graph ball around the canonical heart as DOT, SVG or JSON."""
    spec = RenderSpec(n=args.n, radius=args.radius, layout=args.layout, projective=args.projective, size=args.size)
    eg = tl.projective_exchange_graph(spec.n, spec.radius) if spec.projective else tl.exchange_graph(spec.n, spec.radius)
    fmt = "json" if args.json else args.format
    if fmt == "dot":
        return to_dot(eg)
    if fmt == "svg":
        return graph_svg(eg, spec)
    positions = layout_positions(eg, spec.layout)
    index = {heart: f"h{i}" for i, heart in enumerate(eg.nodes)}
    nodes = [
        {
            "id": index[h],
            "label": h.label(),
            "k": h.k,
            "depth": eg.graph.nodes[h]["depth"],
            "full": h.is_full,
            "x": positions[h].real,
            "y": positions[h].imag,
        }
        for h in eg.nodes
    ]
    edges = sorted(
        ({"source": index[u], "target": index[v], "simple": i} for u, v, i in eg.forward_edges()),
        key=lambda e: (int(e["source"][1:]), int(e["target"][1:]), e["simple"]),
    )
    return GraphOutput.model_validate(
        {
            "n": _level_label(spec.n),
            "radius": spec.radius,
            "projective": spec.projective,
            "layout": spec.layout,
            "nodes": nodes,
            "edges": edges,
        }
    )


@_handle_errors
def cmd_periods(args: argparse.Namespace) -> Output:
    """Twisted periods over the standard cycles, exponential periods at n = inf."""
    n = parse_level(args.n)
    a, b = parse_complex(args.a), parse_complex(args.b)
    engine = _engine(args)
    if args.action == "eval":
        if is_infinite(n):
            value = pd.exp_period(a, b, args.cycle, engine)
        else:
            value = pd.twisted_period(n, a, b, pd.standard_cycles(a, b)[args.cycle - 1], engine)
        return PeriodValueOutput(n=_level_label(n), a=cplx(a), b=cplx(b), cycle=args.cycle, value=cplx(value))
    pair = pd.period_pair(n, a, b, engine)
    return PeriodPairOutput(
        n=_level_label(n), a=cplx(a), b=cplx(b), phi1=cplx(pair.phi1), phi2=cplx(pair.phi2), ratio=cplx(pair.ratio)
    )


@_handle_errors
def cmd_ode(args: argparse.Namespace) -> Output:
    """Residuals of the hypergeometric equation (finite n) and the Airy-type equation (n = inf)."""
    engine = _engine(args)
    if args.action == "check":
        n = parse_level(args.n)
        z = parse_complex(args.z)
        residual = pd.hypergeom_residual(n, z, engine)
        return ResidualOutput(
            kind="hypergeometric", n=_level_label(n), point=cplx(z), residual=residual, threshold=args.tol, ok=residual < args.tol
        )
    a = parse_complex(args.a)
    residual = pd.airy_residual(a, engine)
    return ResidualOutput(kind="airy", n="inf", point=cplx(a), residual=residual, threshold=args.tol, ok=residual < args.tol)


@_handle_errors
def cmd_map(args: argparse.Namespace) -> Output:
    """Evaluate and invert f_n / f_inf, and report the vertex exponents."""
    n = parse_level(args.n)
    engine = _engine(args)
    if args.action == "eval":
        if args.t is None:
            raise ValueError("--t is required (at n = inf it is the coordinate a)")
        value = parse_complex(args.t)
        point = schwarz.f_infty_map(value, engine=engine) if is_infinite(n) else schwarz.f_map(n, value, engine=engine)
        return MapOutput.model_validate(point.to_dict())
    if args.action == "invert":
        z = parse_complex(args.z)
        found = schwarz.invert_map(n, z)
        return InverseMapOutput(
            n=_level_label(n), z=cplx(z), parameter="a" if is_infinite(n) else "t", value=cplx(found)
        )
    exponents = schwarz.vertex_exponents(n, verify=args.verify, engine=engine)
    return ExponentsOutput.model_validate(exponents.to_dict())


@_handle_errors
def cmd_region(args: argparse.Namespace) -> Output:
    """Classify points against R_n or draw R_n."""
    n = parse_level(args.n)
    points = [parse_complex(z) for z in args.z]
    if args.action == "svg" and not args.json:
        return region_svg(n, points, size=args.size)
    if len(points) != 1:
        raise ValueError("region classify takes exactly one --z")
    query = schwarz.region_classify(n, points[0], args.tol)
    return RegionOutput(n=_level_label(n), z=cplx(points[0]), verdict=query.verdict, distance_estimate=real(query.distance_estimate))


@_handle_errors
def cmd_stab(args: argparse.Namespace) -> Output:
    """Stability conditions: classification, reduction, round trip through the unfolding space, wall walks."""
    n = parse_level(args.n)
    if args.action == "roundtrip":
        return _roundtrip(n, args)
    sigma = _point_from_args(n, args)
    if args.action == "classify":
        verdict = st.classify_fundamental(n, sigma, args.tol)
        _, labels = st.canonical_semistables(sigma, args.tol)
        return ClassifyOutput.model_validate(
            {
                "n": _level_label(n),
                "stability": sigma.to_dict(),
                "verdict": verdict.verdict,
                "semistable": [entry.to_dict() for entry in st.semistable_set(sigma, args.tol)],
                "canonical": sorted(set(labels)),
                "g": _g_or_none(sigma),
            }
        )
    if args.action == "reduce":
        phi, reduced = st.reduce_to_fundamental(n, sigma)
        return ReduceOutput(
            n=_level_label(n),
            auteq=_auteq_output(phi),
            reduced=_stability_output(reduced),
            verdict=st.classify_fundamental(n, reduced).verdict,
            g=cplx(st.g_coordinate(reduced)),
        )
    target = (parse_complex(args.to1), parse_complex(args.to2))
    end = st.wall_walk(sigma, target, args.steps)
    return WalkOutput(
        n=_level_label(n),
        steps=args.steps,
        start=_stability_output(sigma),
        end=_stability_output(end),
        heart_changed=end.heart != sigma.heart,
    )


def _roundtrip(n: Level, args: argparse.Namespace) -> RoundTripOutput:
    """
    Charges → unfolding space → charges on seeded random interior points;
    reports the largest relative error on (Z(S1), Z(S2)).
    """
    rng = np.random.default_rng(args.seed)
    engine = _engine(args)
    worst, failures = 0.0, 0
    for _ in range(args.samples):
        sigma = st.random_interior_point(n, rng)
        cubic = st.cubic_from_stability(n, sigma, engine)
        found = st.charges_from_cubic(n, cubic, engine).as_array()
        expected = sigma.functional()
        error = float(np.max(np.abs(found - expected) / np.abs(expected)))
        worst = max(worst, error)
        if error > args.tol:
            failures += 1
            logger.warning("Round trip off by %.3g at %s", error, sigma.to_dict())
    return RoundTripOutput(
        n=_level_label(n),
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        max_relative_error=worst,
        failures=failures,
        ok=failures == 0,
    )


@_handle_errors
def cmd_monodromy(args: argparse.Namespace) -> Output:
    """Monodromy of the standard cycles around a circle in the hypergeometric z-slice."""
    n = parse_level(args.n)
    if is_infinite(n):
        raise InvalidLevelError("monodromy needs a finite level", n="inf")
    center = parse_complex(args.center)
    loop = pd.circle_loop(center, args.radius, args.samples)
    matrix = pd.monodromy_matrix(n, loop, _engine(args))
    try:
        integer = [list(row) for row in pd.round_monodromy(matrix)]
    except A2StabError:
        integer = None
    return MonodromyOutput(
        n=int(n),
        center=cplx(center),
        radius=args.radius,
        samples=args.samples,
        matrix=[[cplx(v) for v in row] for row in matrix],
        integer_matrix=integer,
        trace=cplx(complex(np.trace(matrix))),
        determinant=cplx(complex(np.linalg.det(matrix))),
    )


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_level(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("-n", "--n", dest="n", required=required, help="level: integer >= 2 or inf")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="force JSON output")
    p.add_argument("--nodes", type=int, default=None, help="initial quadrature node count")


def _add_auteq(p: argparse.ArgumentParser, prefix: str = "") -> None:
    dest = prefix.replace("-", "_")
    p.add_argument(f"--{prefix}word", dest=f"{dest}word", default="", help="braid word over a, A, b, B")
    p.add_argument(f"--{prefix}shift", dest=f"{dest}shift", type=int, default=0, help="shift")
    p.add_argument(f"--{prefix}sigma-power", dest=f"{dest}sigma_power", type=int, default=0, help="p in Σ^p (n = inf)")


def _add_point(p: argparse.ArgumentParser) -> None:
    _add_auteq(p)
    p.add_argument("--k", type=int, default=0, help="chain index of the heart (Φ, k)")
    p.add_argument("--z1", help="charge of the heart's first simple")
    p.add_argument("--z2", help="charge of the heart's second simple")
    p.add_argument("--phase1", type=float, help="phase of S1 (instead of --z1/--z2)")
    p.add_argument("--phase2", type=float, help="phase of S2")
    p.add_argument("--modulus1", type=float, default=1.0, help="|Z(S1)| with --phase1")
    p.add_argument("--modulus2", type=float, default=1.0, help="|Z(S2)| with --phase2")
    p.add_argument("--tol", type=float, default=None, help="verdict tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="a2stab", description="Stability conditions on the CY_n A2 category.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_APP_VERSION}")
    parser.add_argument("--metrics", action="store_true", help="print counters to stderr after the command")
    parser.add_argument("--log-level", default=None, help="override A2STAB_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    braid = commands.add_parser("braid", help="braid words and autoequivalences")
    braid_actions = braid.add_subparsers(dest="action", required=True)
    p = braid_actions.add_parser("eval", help="evaluate words; several words are tested for equality")
    p.add_argument("words", nargs="+")
    _add_common(p)
    p = braid_actions.add_parser("auteq", help="canonical form of (word, shift)")
    _add_level(p)
    _add_auteq(p)
    _add_common(p)
    p = braid_actions.add_parser("compose", help="canonical form of then∘first")
    _add_level(p)
    _add_auteq(p)
    _add_auteq(p, "then-")
    _add_common(p)
    braid.set_defaults(func=cmd_braid)

    p = commands.add_parser("graph", help="exchange graph ball")
    _add_level(p)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--projective", action="store_true", help="identify hearts up to shift")
    p.add_argument("--format", choices=["dot", "svg", "json"], default="json")
    p.add_argument("--layout", choices=["disc", "linear"], default="disc")
    p.add_argument("--size", type=int, default=640)
    _add_common(p)
    p.set_defaults(func=cmd_graph)

    periods = commands.add_parser("periods", help="twisted and exponential periods")
    period_actions = periods.add_subparsers(dest="action", required=True)
    for name in ("eval", "pair"):
        p = period_actions.add_parser(name)
        _add_level(p)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        if name == "eval":
            p.add_argument("--cycle", type=int, choices=[1, 2], default=1)
        _add_common(p)
    periods.set_defaults(func=cmd_periods)

    ode = commands.add_parser("ode", help="differential equations of the periods")
    ode_actions = ode.add_subparsers(dest="action", required=True)
    p = ode_actions.add_parser("check", help="hypergeometric residual at z")
    _add_level(p)
    p.add_argument("--z", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    p = ode_actions.add_parser("airy", help="Airy-type residual at a (n = inf)")
    p.add_argument("--a", required=True)
    p.add_argument("--tol", type=float, default=1e-5)
    _add_common(p)
    ode.set_defaults(func=cmd_ode)

    conformal = commands.add_parser("map", help="the conformal maps f_n and f_inf")
    map_actions = conformal.add_subparsers(dest="action", required=True)
    p = map_actions.add_parser("eval")
    _add_level(p)
    p.add_argument("--t", help="parameter t (finite n) or a (n = inf)")
    _add_common(p)
    p = map_actions.add_parser("invert")
    _add_level(p)
    p.add_argument("--z", required=True)
    _add_common(p)
    p = map_actions.add_parser("exponents")
    _add_level(p)
    p.add_argument("--verify", action="store_true", help="fit the exponents numerically")
    _add_common(p)
    conformal.set_defaults(func=cmd_map)

    region = commands.add_parser("region", help="the regions R_n")
    region_actions = region.add_subparsers(dest="action", required=True)
    for name in ("classify", "svg"):
        p = region_actions.add_parser(name)
        _add_level(p)
        p.add_argument("--z", action="append", default=[], help="point of the z-plane (repeatable for svg)")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--size", type=int, default=480)
        _add_common(p)
    region.set_defaults(func=cmd_region)

    stab = commands.add_parser("stab", help="stability conditions and the fundamental domain")
    stab_actions = stab.add_subparsers(dest="action", required=True)
    for name in ("classify", "reduce", "walk"):
        p = stab_actions.add_parser(name)
        _add_level(p)
        _add_point(p)
        if name == "walk":
            p.add_argument("--to1", required=True, help="target charge of the first simple")
            p.add_argument("--to2", required=True, help="target charge of the second simple")
            p.add_argument("--steps", type=int, default=64)
        _add_common(p)
    p = stab_actions.add_parser("roundtrip", help="charges → (a, b) → charges on random interior points")
    _add_level(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p)
    stab.set_defaults(func=cmd_stab)

    p = commands.add_parser("monodromy", help="monodromy of the standard cycles around a circle")
    _add_level(p)
    p.add_argument("--center", default="1")
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=64)
    _add_common(p)
    p.set_defaults(func=cmd_monodromy)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level or settings.log_level)
    args.command_name = args.command if getattr(args, "action", None) is None else f"{args.command}.{args.action}"
    code = args.func(args)
    if args.metrics:
        sys.stderr.write(json.dumps(metrics.to_dict(), indent=2, sort_keys=True) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
