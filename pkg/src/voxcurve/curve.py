"""Parametric space curves and the cylindrical oscillation test curve.

A curve maps a scalar parameter ``phi`` in ``[phi_min, phi_max]`` to a point in
grid units. Tangents come from an analytic derivative when one is supplied, or
from a one-sided finite difference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from voxcurve.errors import (
    ConfigurationError,
    NoAnalyticTangent,
    OnAxis,
    ParameterOutOfRange,
)
from voxcurve.grid import Grid

Point = tuple[float, float, float]

PARAM_TOL = 1e-9
DEFAULT_FD_STEP = 1e-4
BOUNDS_SAMPLES = 4096
TWO_PI = 2.0 * math.pi


class Tangent(NamedTuple):
    gx: float
    gy: float
    gz: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.gx * self.gx + self.gy * self.gy + self.gz * self.gz)

    @property
    def is_degenerate(self) -> bool:
        return self.gx == 0.0 and self.gy == 0.0 and self.gz == 0.0


@dataclass(frozen=True)
class CylCurveParams:
    """Point circling a cylinder parallel to OZ while oscillating along it.

    ``x = x0 + R cos(phi)``, ``y = y0 + R sin(phi)``,
    ``z = z0 + A (1 - cos(omega phi))``. ``omega`` is a plain multiplier of
    ``phi``.
    """

    R: float
    A: float
    omega: float
    x0: float
    y0: float
    z0: float
    phi_min: float = -math.pi
    phi_max: float = math.pi

    def __post_init__(self):
        values = (self.R, self.A, self.omega, self.x0, self.y0, self.z0, self.phi_min, self.phi_max)
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError("cylinder curve parameters must be finite")
        if self.R <= 0:
            raise ConfigurationError(f"R must be positive, got {self.R}")
        if self.A < 0:
            raise ConfigurationError(f"A must be non-negative, got {self.A}")
        if self.omega < 0:
            raise ConfigurationError(f"omega must be non-negative, got {self.omega}")
        if not self.phi_min < self.phi_max:
            raise ConfigurationError(f"need phi_min < phi_max, got [{self.phi_min}, {self.phi_max}]")

    def as_tuple(self) -> tuple[float, ...]:
        """Shape parameters in kernel order ``(x0, y0, z0, R, A, omega)``."""
        return (float(self.x0), float(self.y0), float(self.z0), float(self.R), float(self.A), float(self.omega))


@dataclass(frozen=True)
class ParametricCurve:
    """A space curve given by ``point_fn(phi) -> (x, y, z)``.

    ``point_fn`` should accept numpy arrays and return a ``(3, n)`` array;
    scalar-only callables still work, just slower, in the sampled searches.
    ``tangent_fn`` is the analytic derivative, ``projection_fn(point, hint)``
    a closed-form parameter estimate for the nearest curve point.
    """

    point_fn: Callable
    phi_min: float
    phi_max: float
    tangent_fn: Optional[Callable] = None
    projection_fn: Optional[Callable] = None
    # set only for the cylinder family; routes distance scans to the fast kernels
    cyl: Optional[CylCurveParams] = field(default=None, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.phi_min) and math.isfinite(self.phi_max)):
            raise ConfigurationError("parameter range must be finite")
        if not self.phi_min < self.phi_max:
            raise ConfigurationError(f"need phi_min < phi_max, got [{self.phi_min}, {self.phi_max}]")

    @property
    def span(self) -> float:
        return self.phi_max - self.phi_min

    def in_range(self, phi: float) -> bool:
        return self.phi_min - PARAM_TOL <= phi <= self.phi_max + PARAM_TOL

    def points(self, phis: np.ndarray) -> np.ndarray:
        """Evaluate the curve at many parameters; returns shape ``(3, n)``."""
        phis = np.asarray(phis, dtype=float)
        try:
            raw = self.point_fn(phis)
            # components may mix scalars and arrays, e.g. a constant coordinate
            out = np.array(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in raw)))
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != (3, phis.size):
            out = np.array([self.point_fn(float(p)) for p in phis], dtype=float).reshape(-1, 3).T
        return out

    def check_bounds(self, grid: Grid, n_samples: int = BOUNDS_SAMPLES) -> None:
        """Raise :class:`ConfigurationError` if a sampled point leaves ``[0, H)^3``."""
        pts = self.points(np.linspace(self.phi_min, self.phi_max, n_samples))
        bad = ~(np.all(np.isfinite(pts), axis=0) & np.all((pts >= 0.0) & (pts < grid.H), axis=0))
        if bad.any():
            k = int(np.argmax(bad))
            raise ConfigurationError(
                f"curve leaves the {grid.H}^3 volume: sample {k} at {tuple(round(float(x), 6) for x in pts[:, k])}"
            )


def eval_point(curve: ParametricCurve, phi: float) -> Point:
    if not curve.in_range(phi):
        raise ParameterOutOfRange(f"phi={phi} outside [{curve.phi_min}, {curve.phi_max}]")
    x, y, z = curve.point_fn(phi)
    return (float(x), float(y), float(z))


def tangent_analytic(curve: ParametricCurve, phi: float) -> Tangent:
    if curve.tangent_fn is None:
        raise NoAnalyticTangent("curve has no analytic tangent")
    if not curve.in_range(phi):
        raise ParameterOutOfRange(f"phi={phi} outside [{curve.phi_min}, {curve.phi_max}]")
    gx, gy, gz = curve.tangent_fn(phi)
    return Tangent(float(gx), float(gy), float(gz))


def tangent_fd(curve: ParametricCurve, phi: float, h: float = DEFAULT_FD_STEP) -> Tangent:
    """First right difference, or first left difference where ``phi + h`` overshoots."""
    if h <= 0:
        raise ConfigurationError(f"finite-difference step must be positive, got {h}")
    if not curve.in_range(phi):
        raise ParameterOutOfRange(f"phi={phi} outside [{curve.phi_min}, {curve.phi_max}]")
    if phi + h <= curve.phi_max:
        a, b = phi, phi + h
    elif phi - h >= curve.phi_min:
        a, b = phi - h, phi
    else:
        raise ParameterOutOfRange(f"step h={h} does not fit in the parameter range around phi={phi}")
    pa = curve.point_fn(a)
    pb = curve.point_fn(b)
    return Tangent(
        (float(pb[0]) - float(pa[0])) / h,
        (float(pb[1]) - float(pa[1])) / h,
        (float(pb[2]) - float(pa[2])) / h,
    )


def speed(curve: ParametricCurve, phi: float) -> float:
    """Tangent magnitude, analytic when available."""
    if curve.tangent_fn is not None:
        return tangent_analytic(curve, phi).norm
    return tangent_fd(curve, phi).norm


def project_param_cyl(params: CylCurveParams, point: Sequence[float], phi_hint: float) -> float:
    """Parameter of the cylinder curve point at the same polar angle as ``point``.

    The angle is measured around the offset axis and unwrapped to the
    ``2 pi k`` branch nearest ``phi_hint``, then clamped into the range.
    """
    dx = point[0] - params.x0
    dy = point[1] - params.y0
    if dx == 0.0 and dy == 0.0:
        raise OnAxis(f"point {tuple(point)} lies on the cylinder axis")
    a = math.atan2(dy, dx)
    a += TWO_PI * round((phi_hint - a) / TWO_PI)
    return min(max(a, params.phi_min), params.phi_max)


def cylinder_curve(params: CylCurveParams, grid: Optional[Grid] = None) -> ParametricCurve:
    """Build the test curve; with ``grid`` the curve must stay inside the volume."""
    x0, y0, z0, R, A, w = params.as_tuple()

    def point_fn(phi):
        if isinstance(phi, np.ndarray):
            return np.stack((x0 + R * np.cos(phi), y0 + R * np.sin(phi), z0 + A * (1.0 - np.cos(w * phi))))
        return (x0 + R * math.cos(phi), y0 + R * math.sin(phi), z0 + A * (1.0 - math.cos(w * phi)))

    def tangent_fn(phi):
        return (-R * math.sin(phi), R * math.cos(phi), w * A * math.sin(w * phi))

    def projection_fn(point, phi_hint):
        return project_param_cyl(params, point, phi_hint)

    curve = ParametricCurve(
        point_fn=point_fn,
        phi_min=params.phi_min,
        phi_max=params.phi_max,
        tangent_fn=tangent_fn,
        projection_fn=projection_fn,
        cyl=params,
    )
    if grid is not None:
        curve.check_bounds(grid)
    return curve


def segment_curve(start: Sequence[float], end: Sequence[float]) -> ParametricCurve:
    """Straight segment ``start + phi (end - start)`` for ``phi`` in ``[0, 1]``."""
    s = np.asarray(start, dtype=float)
    d = np.asarray(end, dtype=float) - s

    def point_fn(phi):
        if isinstance(phi, np.ndarray):
            return s[:, None] + d[:, None] * phi[None, :]
        return (s[0] + d[0] * phi, s[1] + d[1] * phi, s[2] + d[2] * phi)

    def tangent_fn(phi):
        return (d[0], d[1], d[2])

    return ParametricCurve(point_fn=point_fn, phi_min=0.0, phi_max=1.0, tangent_fn=tangent_fn)
