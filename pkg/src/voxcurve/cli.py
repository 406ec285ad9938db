"""Command-line interface: ``trace``, ``experiment`` and ``verify``."""
from __future__ import annotations

import argparse
import json
import math
import sys

from voxcurve import kernels
from voxcurve.curve import cylinder_curve
from voxcurve.errors import VoxcurveError
from voxcurve.experiments import (
    ExperimentConfig,
    emit_report,
    emit_voxels,
    load_suite,
    paper_suite,
    parse_voxels,
    run_experiment,
    run_suite,
)
from voxcurve.grid import Grid, HALF_DIAGONAL, is_neighbor
from voxcurve.tracer import verify_against_oracle


def _curve_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("curve")
    g.add_argument("--resolution", type=int, default=128, help="voxels per axis (H)")
    g.add_argument("--omega", type=float, default=4.0)
    g.add_argument("--R", type=float, default=None, help="cylinder radius (default 40 H/128)")
    g.add_argument("--A", type=float, default=None, help="oscillation amplitude (default 40 H/128)")
    g.add_argument("--x0", type=float, default=None)
    g.add_argument("--y0", type=float, default=None)
    g.add_argument("--z0", type=float, default=None, help="default H/2 - A")
    g.add_argument("--phi-min", type=float, default=-math.pi, help="radians")
    g.add_argument("--phi-max", type=float, default=math.pi, help="radians")


def _method_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("method")
    g.add_argument("--variant", choices=("V1", "V2", "V3"), default="V1")
    g.add_argument("--tangent-mode", choices=("analytic", "finite_difference"), default="analytic")
    g.add_argument("--fd-step", type=float, default=1e-4)
    g.add_argument("--fixed-window", action="store_true", help="use --phi-d/--delta-phi instead of adaptive windows")
    g.add_argument("--phi-d", type=float, default=0.05)
    g.add_argument("--delta-phi", type=float, default=5e-4)
    g.add_argument("--max-steps", type=int, default=None)
    g.add_argument("--oracle-samples", type=int, default=20000)


def _config_from_args(a: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        resolution=a.resolution,
        omega=a.omega,
        variant=getattr(a, "variant", "V1"),
        tangent_mode=getattr(a, "tangent_mode", "analytic"),
        R=a.R,
        A=a.A,
        x0=a.x0,
        y0=a.y0,
        z0=a.z0,
        phi_min=a.phi_min,
        phi_max=a.phi_max,
        fd_step=getattr(a, "fd_step", 1e-4),
        adaptive=not getattr(a, "fixed_window", False),
        phi_d=getattr(a, "phi_d", 0.05),
        delta_phi=getattr(a, "delta_phi", 5e-4),
        max_steps=getattr(a, "max_steps", None),
        oracle_samples=getattr(a, "oracle_samples", 20000),
    )


def _out(path: str):
    return sys.stdout if path == "-" else path


def cmd_trace(a: argparse.Namespace) -> int:
    row = run_experiment(_config_from_args(a), verify=not a.no_verify)
    if not row.ok:
        print(f"trace failed: {row.error}", file=sys.stderr)
    elif a.voxels:
        emit_voxels(row.result, _out(a.voxels))
    emit_report([row], _out(a.report), a.format, timing=not a.no_timing)
    return 0 if row.ok else 1


def cmd_experiment(a: argparse.Namespace) -> int:
    suite = paper_suite() if a.suite == "paper" else load_suite(a.suite)
    rows = run_suite(suite, jobs=a.jobs, verify=not a.no_verify)
    emit_report(rows, _out(a.output), a.format, timing=not a.no_timing)
    failed = [r for r in rows if not r.ok]
    for r in failed:
        print(f"failed: {r.config.to_dict()} -> {r.error}", file=sys.stderr)
    return 1 if failed else 0


def cmd_verify(a: argparse.Namespace) -> int:
    cfg = _config_from_args(a)
    curve = cylinder_curve(cfg.curve_params(), Grid(cfg.resolution))
    seq = parse_voxels(sys.stdin if a.voxels == "-" else a.voxels)
    rep = verify_against_oracle(curve, seq, n_samples=a.oracle_samples)
    breaks = [k for k in range(1, len(seq)) if not is_neighbor(seq[k - 1], seq[k])]
    summary = {
        "n_voxels": len(seq),
        "max_oracle": rep.max_oracle,
        "n_exceeding_half_diagonal": rep.n_exceeding,
        "half_diagonal": HALF_DIAGONAL,
        "connectivity_breaks": breaks,
    }
    print(json.dumps(summary, indent=2))
    return 0 if rep.n_exceeding == 0 and not breaks and seq else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="voxcurve", description=__doc__)
    parser.add_argument("--kernels", choices=("auto", "compiled", "python"), default="auto",
                        help="distance kernel backend")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", help="voxelize one test-curve configuration")
    _curve_args(p)
    _method_args(p)
    p.add_argument("--voxels", help="write the voxel list here ('-' for stdout)")
    p.add_argument("--report", default="-", help="metrics report destination")
    p.add_argument("--format", choices=("csv", "structured"), default="csv")
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--no-verify", action="store_true", help="skip the oracle check")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("experiment", help="run the built-in variant comparison or a suite file")
    p.add_argument("--suite", default="paper", help="'paper' or a JSON list of config records")
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("csv", "structured"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("verify", help="check a voxel list against the curve with the oracle")
    _curve_args(p)
    p.add_argument("--voxels", required=True, help="voxel list file ('-' for stdin)")
    p.add_argument("--oracle-samples", type=int, default=20000)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.kernels != "auto":
        kernels.set_backend(args.kernels)
    try:
        return args.func(args)
    except (VoxcurveError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
