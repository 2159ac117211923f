"""Command-line front end.

One subcommand per analysis: ``coherence``, ``eval``, ``ucv``, ``dist``,
``bounds``, ``dominance``, ``pipeline analyze``, ``pipeline sweep``. Exit
codes: 0 success or property holds, 1 a checked property failed (a
counterexample was found), 2 usage or input error. Given fixed seeds,
identical invocations print byte-identical output; ``--json`` emits the
documents described by the schemas under ``docs/schemas``.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import __version__
from .coherence import coherence_report, enumerate_ucv
from .core import as_vector
from .enumeration import LIMIT_ENV_VAR
from .errors import MscsError, PropertyFailureError
from .pipeline import (
    export_results,
    load_pipeline_spec,
    pipeline_cdf,
    sweep_state1,
)
from .probability import (
    ComponentDistribution,
    SystemDistribution,
    cdf_bounds,
    closed_form_cdf,
    dominance_check,
    exact_system_distribution,
    monte_carlo_cdf,
)
from .structure import (
    Component,
    Parallel,
    Series,
    arity,
    eval_expr,
    format_expr,
    parse_expr,
)


class UsageError(MscsError):
    """Bad flag combination or malformed inline value."""


def _parse_levels(text: str) -> tuple[int, ...]:
    try:
        parts = [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(
            f"state must be comma-separated integers, got {text!r}"
        ) from None
    return as_vector(parts)


def _parse_pmf(text: str) -> ComponentDistribution:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise UsageError(
            f"pmf must be comma-separated numbers, got {text!r}"
        ) from None
    return ComponentDistribution(values)


def _resolve_dists(
    pmfs: list[str] | None,
    spec_path: str | None,
    n_components: int | None,
    flag: str = "--pmf",
    spec_flag: str = "--spec",
) -> list[ComponentDistribution]:
    if pmfs and spec_path:
        raise UsageError(f"give either {flag} or {spec_flag}, not both")
    if spec_path:
        dists = list(load_pipeline_spec(spec_path).distributions)
    elif pmfs:
        dists = [_parse_pmf(p) for p in pmfs]
    else:
        raise UsageError(f"provide component pmfs via {flag} or {spec_flag}")
    if n_components is not None and len(dists) != n_components:
        if len(dists) == 1:
            # one pmf broadcasts to identical components
            dists = dists * n_components
        else:
            raise UsageError(
                f"{len(dists)} distributions given but the structure "
                f"references {n_components} components"
            )
    return dists


def _flat_kind(expr, n_components: int) -> str:
    """Kind of a flat series/parallel over each component exactly once."""
    if isinstance(expr, Component) and n_components == 1:
        return "series"  # single component: both closed forms coincide
    if isinstance(expr, (Series, Parallel)):
        indices = sorted(
            c.index for c in expr.children if isinstance(c, Component)
        )
        if len(indices) == len(expr.children) and indices == list(
            range(1, n_components + 1)
        ):
            return "series" if isinstance(expr, Series) else "parallel"
    raise UsageError(
        "the closed form needs a flat series(...) or parallel(...) "
        "referencing each component exactly once"
    )


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _cmd_coherence(args) -> int:
    expr = parse_expr(args.structure)
    n = args.components if args.components is not None else arity(expr)
    report = coherence_report(expr, n, args.max_state, args.limit)
    if args.json:
        doc = report.to_dict()
        doc["structure"] = format_expr(expr)
        _emit_json(doc)
    else:
        print(report.to_table())
    return 0 if report.overall else 1


def _cmd_eval(args) -> int:
    expr = parse_expr(args.structure)
    state = _parse_levels(args.state)
    level = eval_expr(expr, state)
    if args.json:
        _emit_json(
            {
                "structure": format_expr(expr),
                "state": list(state),
                "level": level,
            }
        )
    else:
        print(level)
    return 0


def _cmd_ucv(args) -> int:
    expr = parse_expr(args.structure)
    n = args.components if args.components is not None else arity(expr)
    found = enumerate_ucv(expr, n, args.max_state, args.level, args.limit)
    if args.json:
        _emit_json(
            {
                "structure": format_expr(expr),
                "max_state": args.max_state,
                "level": found.level,
                "count": len(found.vectors),
                "vectors": [list(v) for v in found.vectors],
            }
        )
    else:
        for vec in found.vectors:
            print(",".join(str(v) for v in vec))
    return 0


def _cmd_dist(args) -> int:
    expr = parse_expr(args.structure)
    n = arity(expr)
    dists = _resolve_dists(args.pmf, args.spec, n)
    max_state = dists[0].max_state

    if args.method == "mc":
        if args.level is None:
            raise UsageError("--method mc requires --level")
        est = monte_carlo_cdf(expr, dists, args.level, args.samples, args.seed)
        if args.json:
            _emit_json(
                {
                    "method": "mc",
                    "structure": format_expr(expr),
                    "level": args.level,
                    "estimate": est.estimate,
                    "std_error": est.std_error,
                    "samples": est.samples,
                    "seed": est.seed,
                }
            )
        else:
            print(f"estimate  {est.estimate:.10f}")
            print(f"std_error {est.std_error:.10f}")
        return 0

    if args.method == "exact":
        dist = exact_system_distribution(expr, dists, args.limit)
    else:  # closed
        kind = _flat_kind(expr, n)
        cdf = [closed_form_cdf(kind, dists, j) for j in range(max_state + 1)]
        pmf = [cdf[0]] + [cdf[j] - cdf[j - 1] for j in range(1, max_state + 1)]
        dist = SystemDistribution(tuple(pmf), tuple(cdf))

    if args.out:
        export_results(dist, args.out)
    if args.json:
        _emit_json(
            {
                "method": args.method,
                "structure": format_expr(expr),
                "levels": list(range(max_state + 1)),
                "pmf": list(dist.pmf),
                "cdf": list(dist.cdf),
            }
        )
    else:
        if args.level is not None:
            print(f"{dist.cdf[args.level]:.10f}")
        else:
            print("level pmf cdf")
            for j in range(max_state + 1):
                print(f"{j} {dist.pmf[j]:.10f} {dist.cdf[j]:.10f}")
    return 0


def _cmd_bounds(args) -> int:
    dists = _resolve_dists(args.pmf, args.spec, None)
    lower, upper = cdf_bounds(args.kind, dists, args.level)
    if args.json:
        _emit_json(
            {
                "kind": args.kind,
                "level": args.level,
                "n_components": len(dists),
                "lower": lower,
                "upper": upper,
            }
        )
    else:
        print(f"lower {lower:.10f}")
        print(f"upper {upper:.10f}")
    return 0


def _cmd_dominance(args) -> int:
    expr = parse_expr(args.structure)
    n = arity(expr)
    dists = _resolve_dists(args.pmf, args.spec, n)
    primed = _resolve_dists(
        args.pmf_prime, args.spec_prime, n, "--pmf-prime", "--spec-prime"
    )
    holds = dominance_check(expr, primed, dists, args.limit)
    if args.json:
        system = exact_system_distribution(expr, dists, args.limit)
        system_primed = exact_system_distribution(expr, primed, args.limit)
        _emit_json(
            {
                "structure": format_expr(expr),
                "holds": holds,
                "cdf": list(system.cdf),
                "cdf_prime": list(system_primed.cdf),
            }
        )
    else:
        print("dominance holds" if holds else "dominance fails")
    return 0 if holds else 1


def _cmd_pipeline_analyze(args) -> int:
    spec = load_pipeline_spec(args.spec)
    value = pipeline_cdf(spec, args.level)
    if args.json:
        _emit_json({"spec": args.spec, "level": args.level, "cdf": value})
    else:
        print(f"{value:.10f}")
    return 0


def _cmd_pipeline_sweep(args) -> int:
    spec = load_pipeline_spec(args.spec)
    result = sweep_state1(spec, args.trials, args.seed)
    if args.out:
        export_results(result, args.out)
    if args.json:
        best = result.argmax_row()
        _emit_json(
            {
                "seed": result.seed,
                "trials": result.trials,
                "corner_supremum": result.corner_supremum,
                "argmax": {
                    "trial": best.trial,
                    "p_1_1": best.p_1_1,
                    "p_2_1": best.p_2_1,
                    "P_pipeline_1": best.performance,
                },
                "rows": [
                    {
                        "trial": r.trial,
                        "p_1_1": r.p_1_1,
                        "p_2_1": r.p_2_1,
                        "P_pipeline_1": r.performance,
                    }
                    for r in result.rows
                ],
            }
        )
    elif args.out:
        best = result.argmax_row()
        print(f"rows {result.trials}")
        print(f"argmax_trial {best.trial}")
        print(f"argmax_p_1_1 {best.p_1_1:.10f}")
        print(f"argmax_p_2_1 {best.p_2_1:.10f}")
        print(f"argmax_P {best.performance:.10f}")
        print(f"corner_supremum {result.corner_supremum:.10f}")
    else:
        print("trial,p_1_1,p_2_1,P_pipeline_1")
        for r in result.rows:
            print(
                f"{r.trial},{r.p_1_1:.17g},{r.p_2_1:.17g},"
                f"{r.performance:.17g}"
            )
    return 0


def _add_limit(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--limit",
        type=int,
        default=None,
        help=f"enumeration guard override (also {LIMIT_ENV_VAR})",
    )


def _add_json(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON document")


def _add_dists(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--pmf",
        action="append",
        metavar="P0,P1,...",
        help="component pmf, repeatable (a single one broadcasts)",
    )
    p.add_argument("--spec", help="pipeline spec file supplying the pmfs")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mscs",
        description="Analyze multistate coherent systems.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="verify the three coherence conditions")
    p.add_argument("--structure", required=True)
    p.add_argument("--max-state", type=int, required=True)
    p.add_argument("--components", type=int, default=None)
    _add_limit(p)
    _add_json(p)
    p.set_defaults(handler=_cmd_coherence)

    p = sub.add_parser("eval", help="evaluate a structure on a state vector")
    p.add_argument("--structure", required=True)
    p.add_argument("--state", required=True, metavar="L1,L2,...")
    _add_json(p)
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("ucv", help="enumerate upper critical connection vectors")
    p.add_argument("--structure", required=True)
    p.add_argument("--max-state", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--components", type=int, default=None)
    _add_limit(p)
    _add_json(p)
    p.set_defaults(handler=_cmd_ucv)

    p = sub.add_parser("dist", help="system performance distribution")
    p.add_argument("--structure", required=True)
    p.add_argument(
        "--method", choices=["exact", "closed", "mc"], default="exact"
    )
    _add_dists(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the distribution as CSV")
    _add_limit(p)
    _add_json(p)
    p.set_defaults(handler=_cmd_dist)

    p = sub.add_parser("bounds", help="product bounds on the system CDF")
    p.add_argument("--kind", choices=["series", "parallel"], required=True)
    _add_dists(p)
    p.add_argument("--level", type=int, required=True)
    _add_json(p)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser(
        "dominance", help="componentwise CDF dominance carries to the system"
    )
    p.add_argument("--structure", required=True)
    _add_dists(p)
    p.add_argument(
        "--pmf-prime",
        action="append",
        metavar="P0,P1,...",
        help="dominated-side pmf, repeatable",
    )
    p.add_argument("--spec-prime", help="pipeline spec file, dominated side")
    _add_limit(p)
    _add_json(p)
    p.set_defaults(handler=_cmd_dominance)

    p = sub.add_parser("pipeline", help="oil and gas pipeline case study")
    psub = p.add_subparsers(dest="pipeline_command", required=True)

    pa = psub.add_parser("analyze", help="pipeline CDF at one level")
    pa.add_argument("--spec", required=True)
    pa.add_argument("--level", type=int, required=True)
    _add_json(pa)
    pa.set_defaults(handler=_cmd_pipeline_analyze)

    ps = psub.add_parser("sweep", help="sweep the first two segments' state-1 mass")
    ps.add_argument("--spec", required=True)
    ps.add_argument("--trials", type=int, required=True)
    ps.add_argument("--seed", type=int, required=True)
    ps.add_argument("--out", help="write the sweep rows as CSV")
    _add_json(ps)
    ps.set_defaults(handler=_cmd_pipeline_sweep)

    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        code = exit_.code
        return 0 if code in (0, None) else 2
    try:
        return args.handler(args)
    except PropertyFailureError as err:
        print(f"property failure: {err}", file=sys.stderr)
        return 1
    except MscsError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
