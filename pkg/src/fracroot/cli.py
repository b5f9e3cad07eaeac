"""Command-line front end: ``fracroot {solve,sweep,bracket,stability,receiver-info}``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Sequence

import numpy as np

from . import serialize as ser
from .errors import FracrootError
from .probing import (
    bracket_scan_1d,
    box_bracket_check,
    stability_curve,
    stability_probe,
)
from .problems import (
    ProblemDef,
    ReceiverParams,
    available_problems,
    get_problem,
    load_receiver_params,
    receiver_coefficients,
)
from .solvers import SolverConfig, solve, solve_parallel_chord
from .sweep import REAL_THRESHOLD, SweepPlan, alpha_sweep

SEED_ENV = "FRACROOT_SEED"


class UsageError(Exception):
    pass


# -- argument parsing helpers --------------------------------------------------

def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _complexes(text: str) -> list[complex]:
    try:
        return [complex(t.replace(" ", "").replace("i", "j")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _pair(text: str) -> tuple[float, float]:
    vals = _floats(text)
    if len(vals) != 2 or not vals[0] < vals[1]:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi' with lo < hi, got {text!r}")
    return vals[0], vals[1]


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _precision(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("precision must be at least 1")
    return value


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", default="example1", choices=available_problems())
    p.add_argument("--config", metavar="JSON", help="receiver parameter overrides")
    p.add_argument("--format", choices=("csv", "json", "table"), default="csv")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--precision", type=_precision, default=8, help="decimals in display columns")


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x0", type=_complexes, help="start point; defaults to the problem's reference")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--tol", type=float, help="residual tolerance")
    p.add_argument("--tol-step", type=float)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--divergence-bound", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracroot", description="Fractional pseudo-Newton root finding."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one iteration from a start point")
    _add_common(p)
    _add_solver(p)
    p.add_argument("--alpha", type=float, help="fractional order (pseudo-Newton)")
    p.add_argument("--method", choices=("pseudo-newton", "chord"), default="pseudo-newton")
    p.add_argument("--slope", type=float, help="slope m for the parallel chord method")
    p.add_argument("--trace", action="store_true", help="include every iterate")

    p = sub.add_parser("sweep", help="collect distinct roots over many orders")
    _add_common(p)
    _add_solver(p)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=_seed, help=f"defaults to ${SEED_ENV}, then 0")
    p.add_argument("--grid-step", type=float, help="use a uniform grid instead of random orders")
    p.add_argument("--alpha-range", type=_pair, action="append", metavar="LO,HI",
                   help="order interval (repeatable); default (0,1) and (1,2)")
    p.add_argument("--margin", type=float, default=1e-3)
    p.add_argument("--dedup-tol", type=float, default=1e-3)
    p.add_argument("--real-threshold", type=float, default=REAL_THRESHOLD)

    p = sub.add_parser("bracket", help="sign-change certificates")
    _add_common(p)
    p.add_argument("--xa", type=_floats)
    p.add_argument("--xb", type=_floats)
    p.add_argument("--scan", action="store_true",
                   help="1-D scan of f_k along component k of --base")
    p.add_argument("--base", type=_floats)
    p.add_argument("--component", type=int, default=1)
    p.add_argument("--range", type=_pair, dest="value_range")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=_seed)

    p = sub.add_parser("stability", help="perturbation probe or curve along one component")
    _add_common(p)
    p.add_argument("--base", type=_floats)
    p.add_argument("--component", type=int, default=1, help="1-based slot to perturb")
    p.add_argument("--offsets", type=_floats, default=[-0.1, 0.0, 0.1])
    p.add_argument("--curve", action="store_true")
    p.add_argument("--range", type=_pair, dest="value_range", default=(0.0, 1.0))
    p.add_argument("--points", type=int, default=101)

    p = sub.add_parser("receiver-info", help="print the receiver coefficients a1..a9")
    p.add_argument("--config", metavar="JSON")
    p.add_argument("--format", choices=("csv", "json", "table"), default="table")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--precision", type=_precision, default=8)

    return parser


# -- commands ------------------------------------------------------------------

def _problem(args) -> ProblemDef:
    if args.config and args.problem != "receiver":
        raise UsageError("--config only applies to --problem receiver")
    params = load_receiver_params(args.config) if args.config else None
    return get_problem(args.problem, params)


def _x0(args, problem: ProblemDef) -> np.ndarray:
    x0 = args.x0 if args.x0 is not None else problem.reference_x0
    if x0 is None:
        raise UsageError(f"--x0 is required for {problem.name}")
    if len(x0) != problem.dim:
        raise UsageError(f"--x0 needs {problem.dim} components, got {len(x0)}")
    return np.asarray(x0, dtype=np.complex128)


def _real_point(values, problem: ProblemDef, flag: str) -> np.ndarray:
    if values is None:
        if problem.reference_x0 is None:
            raise UsageError(f"{flag} is required")
        values = problem.reference_x0
    if len(values) != problem.dim:
        raise UsageError(f"{flag} needs {problem.dim} components, got {len(values)}")
    return np.asarray(values, dtype=float)


def _component(args, problem: ProblemDef) -> int:
    if not 1 <= args.component <= problem.dim:
        raise UsageError(f"--component must be in 1..{problem.dim}, got {args.component}")
    return args.component


def _config(args, problem: ProblemDef, alpha) -> SolverConfig:
    try:
        return SolverConfig.for_problem(
            problem,
            alpha,
            epsilon=args.epsilon,
            tol_residual=args.tol,
            tol_step=args.tol_step,
            max_iter=args.max_iter,
            divergence_bound=args.divergence_bound,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _table_lines(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    lines = [fmt.format(*header)] + [fmt.format(*map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> tuple[str, int]:
    problem = _problem(args)
    x0 = _x0(args, problem)
    if args.method == "chord":
        if args.slope is None or args.slope == 0:
            raise UsageError("--method chord needs a nonzero --slope")
        base = _config(args, problem, 0.5)
        outcome = solve_parallel_chord(
            problem, x0, args.slope,
            tol_residual=base.tol_residual, tol_step=base.tol_step,
            max_iter=base.max_iter, divergence_bound=base.divergence_bound,
            keep_trace=args.trace,
        )
        alpha, meta = None, {"method": "chord", "slope": args.slope}
        epsilon = None
    else:
        if args.alpha is None:
            raise UsageError("--alpha is required for the pseudo-Newton method")
        config = _config(args, problem, args.alpha)
        outcome = solve(problem, x0, config, keep_trace=args.trace)
        alpha, epsilon = config.alpha.alpha, config.epsilon
        meta = {"method": "pseudo-newton", "alpha": alpha, "epsilon": epsilon}
    code = 0 if outcome.converged else 1

    if args.format == "json":
        doc = ser.outcome_to_json(outcome, problem=problem.name, **meta)
        return json.dumps(doc, indent=2) + "\n", code
    if args.format == "table":
        p = args.precision
        lines = [f"status: {outcome.status.value}", f"iterations: {outcome.iterations}"]
        if alpha is not None:
            lines.append(f"alpha: {alpha}")
        for k, z in enumerate(outcome.final_iterate, start=1):
            lines.append(f"x{k}: {ser.format_complex(complex(z), p)}")
        lines.append(f"|x_N - x_N-1|: {outcome.last_step_norm:.{p}e}")
        lines.append(f"|f(x_N)|: {outcome.residual_norm:.{p}e}")
        return "\n".join(lines) + "\n", code
    return ser.outcome_csv(outcome, alpha, problem.dim, args.precision), code


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"${SEED_ENV}: {exc}") from None
    return 0


def cmd_sweep(args) -> tuple[str, int]:
    problem = _problem(args)
    x0 = _x0(args, problem)
    if args.samples < 0:
        raise UsageError("--samples must be nonnegative")
    config = _config(args, problem, 0.5)
    seed = _resolve_seed(args.seed)
    try:
        plan = SweepPlan(
            x0=tuple(x0),
            base_config=config,
            samples=args.samples,
            seed=seed,
            grid_step=args.grid_step,
            domain=tuple(args.alpha_range) if args.alpha_range else ((0.0, 1.0), (1.0, 2.0)),
            margin=args.margin,
            dedup_tol=args.dedup_tol,
            real_threshold=args.real_threshold,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    registry = alpha_sweep(problem, plan)
    tally = registry.tally
    summary = (
        f"samples={sum(tally.values())} converged={tally['converged']} "
        f"diverged={tally['diverged']} max_iter={tally['max_iter_exceeded']} "
        f"numeric_error={tally['numeric_error']} distinct_roots={len(registry)}"
    )
    if args.format == "json":
        doc = ser.registry_to_json(
            registry, problem=problem.name, seed=seed, epsilon=config.epsilon,
            tol_residual=config.tol_residual,
        )
        return json.dumps(doc, indent=2) + "\n", 0
    if args.format == "table":
        p = args.precision
        header = ["m", "alpha"] + [f"xi_{k}" for k in range(1, problem.dim + 1)] + [
            "|xi_m - xi_m-1|", "|f(xi_m)|", "R_m"]
        rows = [
            [i, f"{r.alpha_used:.5f}"]
            + [ser.format_complex(complex(z), p) for z in r.root]
            + [f"{r.last_step_norm:.5e}", f"{r.residual_norm:.5e}", r.iterations]
            for i, r in enumerate(registry.records, start=1)
        ]
        return _table_lines(header, rows) + summary + "\n", 0
    print(summary, file=sys.stderr)
    return ser.registry_csv(registry, problem.dim, args.precision), 0


def cmd_bracket(args) -> tuple[str, int]:
    problem = _problem(args)
    if args.scan:
        base = _real_point(args.base, problem, "--base")
        k = _component(args, problem)
        if args.value_range is None:
            args.value_range = problem.sampling_box[k - 1]
        if args.samples < 2:
            raise UsageError("--samples must be at least 2")

        def f(t):
            x = base.copy()
            x[k - 1] = t
            return float(np.real(problem(x)[k - 1]))

        brackets = bracket_scan_1d(f, args.value_range, args.samples, _resolve_seed(args.seed))
        code = 0 if brackets else 1
        if args.format == "json":
            return json.dumps({"component": k, "brackets": ser.brackets_to_json(brackets)}, indent=2) + "\n", code
        return ser.brackets_csv(brackets, args.precision), code

    if args.xa is None or args.xb is None:
        raise UsageError("bracket needs --xa and --xb (or --scan)")
    xa = _real_point(args.xa, problem, "--xa")
    xb = _real_point(args.xb, problem, "--xb")
    box = box_bracket_check(problem, xa, xb, raise_on_violation=False)
    code = 0 if box.holds else 1
    if not box.holds:
        print("sign-change condition violated for components "
              + ", ".join(map(str, box.violations)), file=sys.stderr)
    if args.format == "json":
        return json.dumps(ser.box_to_json(box), indent=2) + "\n", code
    return ser.box_csv(box, args.precision), code


def cmd_stability(args) -> tuple[str, int]:
    problem = _problem(args)
    base = _real_point(args.base, problem, "--base")
    k = _component(args, problem)
    if args.curve:
        if args.points < 2:
            raise UsageError("--points must be at least 2")
        curve = stability_curve(problem, base, k, args.value_range, args.points)
        if args.format == "json":
            return json.dumps(ser.curve_to_json(curve), indent=2) + "\n", 0
        return ser.curve_csv(curve, args.precision), 0
    report = stability_probe(problem, base, k, args.offsets)
    if args.format == "json":
        return json.dumps(ser.report_to_json(report), indent=2) + "\n", 0
    text = ser.report_csv(report, args.precision)
    if args.format == "table":
        text += f"base_norm: {report.base_norm:.{args.precision}f}\n"
        text += f"classification: {report.classification}\n"
    else:
        print(f"classification: {report.classification}", file=sys.stderr)
    return text, 0


def cmd_receiver_info(args) -> tuple[str, int]:
    params = load_receiver_params(args.config) if args.config else ReceiverParams()
    coef = receiver_coefficients(params)
    names = [f"a{i}" for i in range(1, 10)]
    values = coef.as_tuple()
    if args.format == "json":
        doc = {"parameters": params.to_dict(), "coefficients": dict(zip(names, values))}
        return json.dumps(doc, indent=2) + "\n", 0
    if args.format == "csv":
        return "name,value\n" + "".join(f"{n},{v!r}\n" for n, v in zip(names, values)), 0
    return "".join(f"{n} = {v:.{args.precision}g}\n" for n, v in zip(names, values)), 0


COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "bracket": cmd_bracket,
    "stability": cmd_stability,
    "receiver-info": cmd_receiver_info,
}


# Flags whose value is a comma-separated list of numbers. A value such as
# "-0.1,0,0.1" does not look like a negative number to argparse, so it is
# attached to its flag before parsing.
_LIST_FLAGS = {"--x0", "--xa", "--xb", "--base", "--offsets", "--range", "--alpha-range"}
_NUMBERISH = re.compile(r"^-[\d.]")


def _glue_negative_lists(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _LIST_FLAGS:
            nxt = next(it, None)
            if nxt is not None and _NUMBERISH.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_lists(argv))
    try:
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (FracrootError, ValueError, OSError) as exc:
        print(f"fracroot: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
