"""Main voxelization loop, error metrics and sequence audits."""
from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional, Sequence

from voxcurve.advance import build_step_matrix, candidates
from voxcurve.curve import DEFAULT_FD_STEP, ParametricCurve, eval_point, tangent_analytic, tangent_fd
from voxcurve.distance import DistanceConfig, estimate, oracle_nearest, window_params
from voxcurve.errors import (
    ConfigurationError,
    EmptySequence,
    EndOutOfVolume,
    OutOfVolume,
    StartOutOfVolume,
    VoxelizationDiverged,
)
from voxcurve.grid import HALF_DIAGONAL, Grid, VoxelIndex, chebyshev, point_to_voxel, voxel_center, voxel_contains

# a winner matching one of this many trailing voxels is treated as a livelock
LIVELOCK_WINDOW = 3


class TangentMode(str, enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite_difference"


@dataclass(frozen=True)
class TraceConfig:
    grid: Grid
    tangent_mode: TangentMode = TangentMode.ANALYTIC
    fd_step: float = DEFAULT_FD_STEP
    distance: DistanceConfig = field(default_factory=DistanceConfig)
    max_steps: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "tangent_mode", TangentMode(self.tangent_mode))
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigurationError("max_steps must be at least 1")
        if not self.fd_step > 0:
            raise ConfigurationError("fd_step must be positive")

    @property
    def step_budget(self) -> int:
        return self.max_steps if self.max_steps is not None else 64 * self.grid.H


@dataclass(frozen=True)
class TraceResult:
    sequence: tuple[VoxelIndex, ...]
    dists: tuple[float, ...]
    phis: tuple[float, ...]
    eps_max: float
    eps_av: float
    adjacency_violations: tuple[tuple[int, int], ...]
    steps_taken: int

    @property
    def n_voxels(self) -> int:
        return len(self.sequence)


def error_metrics(dists: Sequence[float]) -> tuple[float, float]:
    """Maximum and mean centre-to-curve distance."""
    if len(dists) == 0:
        raise EmptySequence("no distances to summarize")
    return max(dists), math.fsum(dists) / len(dists)


def adjacency_audit(sequence: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Positions whose count of in-sequence 26-neighbours is off.

    Interior voxels should touch exactly two other sequence members and the
    two endpoints exactly one. Returns ``(position, count)`` pairs.
    """
    n = len(sequence)
    if n < 2:
        return []
    where = defaultdict(list)
    for k, v in enumerate(sequence):
        where[tuple(v)].append(k)
    out = []
    for k, v in enumerate(sequence):
        count = 0
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                for dl in (-1, 0, 1):
                    for m in where.get((v[0] + di, v[1] + dj, v[2] + dl), ()):
                        if m != k:
                            count += 1
        expected = 1 if k in (0, n - 1) else 2
        if count != expected:
            out.append((k, count))
    return out


def _tangent(curve: ParametricCurve, phi: float, cfg: TraceConfig):
    if cfg.tangent_mode is TangentMode.ANALYTIC:
        return tangent_analytic(curve, phi)
    return tangent_fd(curve, phi, cfg.fd_step)


def trace(curve: ParametricCurve, cfg: TraceConfig) -> TraceResult:
    """Voxelize ``curve`` from ``phi_min`` to ``phi_max``.

    Each step builds the advance matrix from the tangent at the current
    parameter, scores the trial voxels with the configured distance estimator
    and keeps the closest (lowest ``q`` on ties). Once the search window
    reaches ``phi_max`` the voxel holding the end point is also admitted as a
    trial voxel, and the loop stops when it is entered.
    """
    grid = cfg.grid
    dcfg = cfg.distance
    S = eval_point(curve, curve.phi_min)
    E = eval_point(curve, curve.phi_max)
    try:
        v = point_to_voxel(grid, S)
    except OutOfVolume as exc:
        raise StartOutOfVolume(str(exc)) from None
    try:
        end_voxel = point_to_voxel(grid, E)
    except OutOfVolume as exc:
        raise EndOutOfVolume(str(exc)) from None

    def near_end(phi: float) -> bool:
        half, _, _ = window_params(curve, phi, dcfg)
        return phi + half >= curve.phi_max

    first = estimate(curve, voxel_center(v), curve.phi_min, dcfg)
    seq = [v]
    dists = [first.dist]
    phis = [first.phi_star]
    phi = curve.phi_min
    steps = 0
    budget = cfg.step_budget

    while not (voxel_contains(v, E) and near_end(phi)):
        if steps >= budget:
            raise VoxelizationDiverged(f"end voxel not reached after {steps} steps (at voxel {tuple(v)})")
        prev = seq[-2] if len(seq) > 1 else None
        m = build_step_matrix(_tangent(curve, phi, cfg))
        trial = candidates(v, m, prev, grid)
        if (
            chebyshev(v, end_voxel) == 1
            and end_voxel != prev
            and all(c != end_voxel for _, c in trial)
            and near_end(phi)
        ):
            trial.append((len(m.offsets), end_voxel))

        best = None
        best_voxel = None
        for _, c in trial:
            r = estimate(curve, voxel_center(c), phi, dcfg)
            if best is None or r.dist < best.dist:
                best, best_voxel = r, c
        if best_voxel in seq[-LIVELOCK_WINDOW:]:
            raise VoxelizationDiverged(f"trace revisited voxel {tuple(best_voxel)} at step {steps}")
        v = best_voxel
        phi = best.phi_star
        seq.append(v)
        dists.append(best.dist)
        phis.append(phi)
        steps += 1

    eps_max, eps_av = error_metrics(dists)
    return TraceResult(
        sequence=tuple(seq),
        dists=tuple(dists),
        phis=tuple(phis),
        eps_max=eps_max,
        eps_av=eps_av,
        adjacency_violations=tuple(adjacency_audit(seq)),
        steps_taken=steps,
    )


@dataclass(frozen=True)
class OracleReport:
    oracle_dists: tuple[float, ...]
    max_oracle: float
    n_exceeding: int
    slack: tuple[float, ...]

    @property
    def min_slack(self) -> float:
        return min(self.slack) if self.slack else 0.0

    @property
    def mean_slack(self) -> float:
        return math.fsum(self.slack) / len(self.slack) if self.slack else 0.0

    @property
    def sound(self) -> bool:
        """Every reported distance is at least the true one (up to 1e-9)."""
        return self.min_slack >= -1e-9


def verify_against_oracle(
    curve: ParametricCurve,
    sequence: Sequence[Sequence[int]],
    dists: Optional[Sequence[float]] = None,
    n_samples: int = 20000,
) -> OracleReport:
    """Check every voxel centre against the global nearest-point oracle.

    ``slack`` is reported minus true distance per voxel; it is all zeros when
    ``dists`` is not given (e.g. verifying a voxel list read from disk).
    """
    truth = [oracle_nearest(curve, voxel_center(v), n_samples).dist for v in sequence]
    if dists is None:
        slack = [0.0] * len(truth)
    else:
        slack = [d - t for d, t in zip(dists, truth)]
    return OracleReport(
        oracle_dists=tuple(truth),
        max_oracle=max(truth) if truth else 0.0,
        n_exceeding=sum(t > HALF_DIAGONAL for t in truth),
        slack=tuple(slack),
    )
