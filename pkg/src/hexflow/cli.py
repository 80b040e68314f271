"""Command-line front end: validate surfaces, evaluate curvature, run flows, solve.

Exit codes
    0  success (flows/solves: converged)
    2  configuration error: unreadable or malformed input, invalid target
    3  inadmissible conformal factor (curvature command)
    4  flow hit the time horizon / solver hit max iterations
    5  flow step size underflowed / solver line search failed
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import conformal, energy, flows, io
from .surface import GluingError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INADMISSIBLE = 3
EXIT_HORIZON = 4
EXIT_UNDERFLOW = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hexflow",
        description="Hyperbolic surfaces from glued hexagons: curvature flows "
        "and prescribed boundary lengths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a surface file")
    p_validate.add_argument("--surface", type=Path, required=True)

    p_curv = sub.add_parser("curvature", help="boundary lengths of a (scaled) metric")
    p_curv.add_argument("--surface", type=Path, required=True)
    p_curv.add_argument("--metric", type=Path, required=True)
    p_curv.add_argument("--factors", type=Path, default=None)

    p_flow = sub.add_parser("flow", help="run a curvature flow (or a sweep over s)")
    p_solve = sub.add_parser("solve", help="Newton solve for prescribed boundary lengths")
    for p in (p_flow, p_solve):
        p.add_argument("--surface", type=Path, required=True)
        p.add_argument("--metric", type=Path, required=True)
        p.add_argument("--factors", type=Path, default=None, help="initial factors; default w = 0")
        p.add_argument("--target", type=Path, required=True)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--report", type=Path, default=None)
        p.add_argument("--seed", type=int, default=0)
    p_flow.add_argument("--s", type=float, default=1.0)
    p_flow.add_argument("--s-list", type=str, default=None, help="comma-separated exponents")
    p_flow.add_argument("--dt0", type=float, default=1e-2)
    p_flow.add_argument("--t-max", type=float, default=1e4)
    p_flow.add_argument("--trace", type=Path, default=None)
    return parser


def _print_vector(name: str, values) -> None:
    for i, x in enumerate(values):
        print(f"{name}_{i}={io.fmt(x)}")


def cmd_validate(args) -> int:
    cx = io.load_surface(args.surface)
    cycle_lengths = ",".join(str(len(c)) for c in cx.boundary_components)
    print(
        f"F={cx.num_faces} E={cx.num_edges} n={cx.num_components} "
        f"chi={cx.euler_characteristic}"
    )
    print(f"cycle_lengths={cycle_lengths}")
    return EXIT_OK


def cmd_curvature(args) -> int:
    cx = io.load_surface(args.surface)
    bg = io.load_metric(args.metric, cx)
    w = io.load_factors(args.factors, cx) if args.factors else np.zeros(cx.num_components)
    try:
        l = conformal.scale_metric(w, bg, cx)
    except conformal.AdmissibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    K = conformal.curvature(l, cx)
    _print_vector("K", K)
    print(f"margin={io.fmt(conformal.boundary_margin(w, bg, cx))}")
    return EXIT_OK


def _trace_path(base: Path, s: float, sweep: bool) -> Path:
    if not sweep:
        return base
    return base.with_name(f"{base.stem}_s{s:g}{base.suffix}")


def cmd_flow(args) -> int:
    cx = io.load_surface(args.surface)
    bg = io.load_metric(args.metric, cx)
    w0 = io.load_factors(args.factors, cx) if args.factors else np.zeros(cx.num_components)
    K_bar = io.load_target(args.target, cx)
    if args.s_list is not None:
        try:
            s_values = [float(tok) for tok in args.s_list.split(",") if tok.strip()]
        except ValueError as exc:
            raise io.FileFormatError(f"bad --s-list: {exc}") from exc
        if not s_values:
            raise io.FileFormatError("--s-list is empty")
    else:
        s_values = [args.s]
    sweep = len(s_values) > 1

    summaries = []
    statuses = []
    for s in s_values:
        spec = flows.FlowSpec(
            s=s, K_bar=K_bar, w0=w0, tol=args.tol, dt0=args.dt0, t_max=args.t_max
        )
        try:
            traj = flows.run_flow(spec, bg, cx)
        except (conformal.AdmissibilityError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        statuses.append(traj.status)
        summary = io.flow_summary(traj, K_bar)
        summary["s"] = s
        summaries.append(summary)
        print(
            f"s={s:g} status={traj.status} t_final={io.fmt(traj.t_final)} "
            f"curvature_error={io.fmt(summary['curvature_error'])}"
        )
        if args.trace is not None:
            io.write_trace_csv(_trace_path(args.trace, s, sweep), traj)
    if args.report is not None:
        io.write_flow_report(args.report, summaries if sweep else summaries[0])
    if flows.STEP_UNDERFLOW in statuses:
        return EXIT_UNDERFLOW
    if flows.HORIZON_REACHED in statuses:
        return EXIT_HORIZON
    return EXIT_OK


def cmd_solve(args) -> int:
    cx = io.load_surface(args.surface)
    bg = io.load_metric(args.metric, cx)
    w0 = io.load_factors(args.factors, cx) if args.factors else np.zeros(cx.num_components)
    K_bar = io.load_target(args.target, cx)
    try:
        report = energy.newton_solve(K_bar, w0, bg, cx, tol=args.tol)
    except (conformal.AdmissibilityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(
        f"status={report.status} iterations={report.iterations} "
        f"residual={io.fmt(report.residual_history[-1])}"
    )
    _print_vector("w", report.w_star)
    if args.report is not None:
        io.write_solve_report(args.report, report)
    if report.status == "converged":
        return EXIT_OK
    if report.status == "max_iterations":
        return EXIT_HORIZON
    return EXIT_UNDERFLOW


_HANDLERS = {
    "validate": cmd_validate,
    "curvature": cmd_curvature,
    "flow": cmd_flow,
    "solve": cmd_solve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (io.FileFormatError, GluingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
