"""Experiment harness: the variant-comparison suite, voxel lists and reports."""
from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from itertools import product
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union

from voxcurve.curve import DEFAULT_FD_STEP, CylCurveParams, cylinder_curve
from voxcurve.distance import DistanceConfig, Variant
from voxcurve.errors import ConfigurationError, VoxcurveError
from voxcurve.grid import Grid, VoxelIndex
from voxcurve.tracer import TangentMode, TraceConfig, TraceResult, trace, verify_against_oracle

CSV_FIELDS = (
    "resolution",
    "omega",
    "variant",
    "tangent",
    "n_voxels",
    "eps_max",
    "eps_av",
    "oracle_max",
    "violations",
    "status",
)

# curve characteristics at the reference resolution of 128; scaled linearly with H
REFERENCE_H = 128
REFERENCE_R = 40.0
REFERENCE_A = 40.0
REFERENCE_OFFSET = 50.0

Destination = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class ExperimentConfig:
    """One cell of the comparison matrix.

    Curve fields left as ``None`` take the reference characteristics for the
    resolution: ``R = A = 40 H/128``, ``x0 = y0 = 50 H/128`` and
    ``z0 = H/2 - A``, which centres the oscillation vertically so the curve
    fits the volume.
    """

    resolution: int = 128
    omega: float = 4.0
    variant: str = "V1"
    tangent_mode: str = "analytic"
    R: Optional[float] = None
    A: Optional[float] = None
    x0: Optional[float] = None
    y0: Optional[float] = None
    z0: Optional[float] = None
    phi_min: float = -math.pi
    phi_max: float = math.pi
    fd_step: float = DEFAULT_FD_STEP
    adaptive: bool = True
    phi_d: float = 0.05
    delta_phi: float = 5e-4
    max_steps: Optional[int] = None
    oracle_samples: int = 20000

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant).value)
        object.__setattr__(self, "tangent_mode", TangentMode(self.tangent_mode).value)

    @classmethod
    def from_dict(cls, record: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(record) - known
        if unknown:
            raise ConfigurationError(f"unknown experiment fields: {sorted(unknown)}")
        return cls(**record)

    def to_dict(self) -> dict:
        return asdict(self)

    def curve_params(self) -> CylCurveParams:
        s = self.resolution / REFERENCE_H
        R = REFERENCE_R * s if self.R is None else self.R
        A = REFERENCE_A * s if self.A is None else self.A
        return CylCurveParams(
            R=R,
            A=A,
            omega=self.omega,
            x0=REFERENCE_OFFSET * s if self.x0 is None else self.x0,
            y0=REFERENCE_OFFSET * s if self.y0 is None else self.y0,
            z0=self.resolution / 2 - A if self.z0 is None else self.z0,
            phi_min=self.phi_min,
            phi_max=self.phi_max,
        )

    def trace_config(self) -> TraceConfig:
        return TraceConfig(
            grid=Grid(self.resolution),
            tangent_mode=TangentMode(self.tangent_mode),
            fd_step=self.fd_step,
            distance=DistanceConfig(
                variant=Variant(self.variant),
                adaptive=self.adaptive,
                phi_d=self.phi_d,
                delta_phi=self.delta_phi,
            ),
            max_steps=self.max_steps,
        )


@dataclass(frozen=True)
class ExperimentRow:
    config: ExperimentConfig
    status: str
    n_voxels: Optional[int] = None
    eps_max: Optional[float] = None
    eps_av: Optional[float] = None
    oracle_max: Optional[float] = None
    oracle_min_slack: Optional[float] = None
    oracle_mean_slack: Optional[float] = None
    violations: Optional[int] = None
    wall_time: Optional[float] = None
    error: Optional[str] = None
    result: Optional[TraceResult] = field(default=None, compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def paper_suite(
    resolutions: Sequence[int] = (128, 256),
    omegas: Sequence[float] = (2.0, 4.0),
    variants: Sequence[str] = ("V1", "V2", "V3"),
    tangent_modes: Sequence[str] = ("analytic", "finite_difference"),
) -> list[ExperimentConfig]:
    """Resolution x omega x variant x tangent mode, in that nesting order."""
    return [
        ExperimentConfig(resolution=h, omega=w, variant=v, tangent_mode=t)
        for h, w, v, t in product(resolutions, omegas, variants, tangent_modes)
    ]


def run_experiment(cfg: ExperimentConfig, verify: bool = True) -> ExperimentRow:
    """Trace one configuration; library errors become a failed row."""
    t0 = time.perf_counter()
    try:
        tcfg = cfg.trace_config()
        curve = cylinder_curve(cfg.curve_params(), tcfg.grid)
        res = trace(curve, tcfg)
        elapsed = time.perf_counter() - t0
        report = verify_against_oracle(curve, res.sequence, res.dists, cfg.oracle_samples) if verify else None
    except VoxcurveError as exc:
        return ExperimentRow(
            config=cfg,
            status="failed",
            wall_time=time.perf_counter() - t0,
            error=f"{type(exc).__name__}: {exc}",
        )
    return ExperimentRow(
        config=cfg,
        status="ok",
        n_voxels=res.n_voxels,
        eps_max=res.eps_max,
        eps_av=res.eps_av,
        oracle_max=report.max_oracle if report else None,
        oracle_min_slack=report.min_slack if report else None,
        oracle_mean_slack=report.mean_slack if report else None,
        violations=len(res.adjacency_violations),
        wall_time=elapsed,
        result=res,
    )


def _run_unverified(cfg):
    return run_experiment(cfg, verify=False)


def run_suite(suite: Iterable[ExperimentConfig], jobs: int = 1, verify: bool = True) -> list[ExperimentRow]:
    """One row per config, in input order regardless of ``jobs``."""
    suite = list(suite)
    if jobs <= 1 or len(suite) <= 1:
        return [run_experiment(c, verify) for c in suite]
    fn = run_experiment if verify else _run_unverified
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, suite))


def load_suite(path: Union[str, Path]) -> list[ExperimentConfig]:
    """Read a JSON list of flat records mirroring :class:`ExperimentConfig`."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise ConfigurationError("suite file must hold a JSON list of records")
    return [ExperimentConfig.from_dict(r) for r in data]


class _Sink:
    """Open a path for writing, or borrow an already open text stream."""

    def __init__(self, dest: Destination):
        self.dest = dest
        self.fh = None

    def __enter__(self) -> IO[str]:
        if isinstance(self.dest, (str, Path)):
            self.fh = open(self.dest, "w", encoding="ascii", newline="")
            return self.fh
        return self.dest

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()


def emit_voxels(sequence: Union[TraceResult, Sequence[Sequence[int]]], dest: Destination) -> None:
    """Write one ``"i j l"`` line per voxel, in order."""
    if isinstance(sequence, TraceResult):
        sequence = sequence.sequence
    with _Sink(dest) as fh:
        for v in sequence:
            fh.write(f"{int(v[0])} {int(v[1])} {int(v[2])}\n")


def parse_voxels(source: Union[str, Path, IO[str]]) -> list[VoxelIndex]:
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="ascii")
    else:
        text = source.read()
    out = []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {n}: expected 'i j l', got {line!r}")
        out.append(VoxelIndex(*(int(p) for p in parts)))
    return out


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    if x == 0 or abs(x) >= 0.1:
        return f"{x:.6f}"
    return f"{x:.6e}"


def _csv_record(row: ExperimentRow, timing: bool) -> list[str]:
    c = row.config
    rec = [
        str(c.resolution),
        f"{c.omega:g}",
        c.variant,
        c.tangent_mode,
        "" if row.n_voxels is None else str(row.n_voxels),
        _fmt(row.eps_max),
        _fmt(row.eps_av),
        _fmt(row.oracle_max),
        "" if row.violations is None else str(row.violations),
        row.status,
    ]
    if timing:
        rec.append(_fmt(row.wall_time))
    return rec


def report_csv(rows: Sequence[ExperimentRow], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS + (("wall_time",) if timing else ()))
    for row in rows:
        w.writerow(_csv_record(row, timing))
    return buf.getvalue()


def report_structured(rows: Sequence[ExperimentRow], timing: bool = True) -> str:
    records = []
    for row in rows:
        rec = {
            "config": row.config.to_dict(),
            "resolution": row.config.resolution,
            "omega": row.config.omega,
            "variant": row.config.variant,
            "tangent": row.config.tangent_mode,
            "n_voxels": row.n_voxels,
            "eps_max": row.eps_max,
            "eps_av": row.eps_av,
            "oracle_max": row.oracle_max,
            "oracle_min_slack": row.oracle_min_slack,
            "oracle_mean_slack": row.oracle_mean_slack,
            "violations": row.violations,
            "status": row.status,
            "error": row.error,
        }
        if timing:
            rec["wall_time"] = row.wall_time
        records.append(rec)
    return json.dumps({"rows": records}, indent=2, sort_keys=True) + "\n"


def emit_report(rows: Sequence[ExperimentRow], dest: Destination, format: str = "csv", timing: bool = True) -> None:
    """Write rows as CSV or as a JSON document (``format="structured"``)."""
    if format == "csv":
        text = report_csv(rows, timing)
    elif format in ("structured", "json"):
        text = report_structured(rows, timing)
    else:
        raise ValueError(f"unknown report format {format!r}")
    with _Sink(dest) as fh:
        fh.write(text)
