"""Distance from a voxel centre to the nearest point of a curve.

Three estimators of increasing accuracy:

* ``V1``: closed-form parameter projection, distance to that single point.
* ``V2``: uniform scan of a parameter window around the projection.
* ``V3``: the ``V2`` scan refined by parabolic interpolation of the squared
  distance through the bracketing triple of samples.

:func:`oracle_nearest` is a global dense scan used only for verification.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from voxcurve import kernels
from voxcurve.curve import ParametricCurve, speed
from voxcurve.errors import (
    ConfigurationError,
    EmptyWindow,
    OnAxis,
    ProjectionUnavailable,
)

# window covers this many voxels of arc on each side in adaptive mode; the
# projection can sit ~sqrt(1 + slope^2) * 0.866 voxels from the true foot point
ADAPTIVE_ARC = 4.0
ADAPTIVE_SAMPLES = 100
ORACLE_TOL = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Variant(str, enum.Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"


@dataclass(frozen=True)
class DistanceConfig:
    """Estimator choice and search-window settings.

    In adaptive mode the half-width is ``4 / |G(phi_hint)|`` and the pitch a
    hundredth of it; ``phi_d`` and ``delta_phi`` are then ignored.
    ``backtrack`` limits how far behind ``phi_hint`` the window may reach
    (defaults to the half-width).
    """

    variant: Variant = Variant.V3
    phi_d: float = 0.05
    delta_phi: float = 5e-4
    refine_tol: float = 0.0
    adaptive: bool = True
    backtrack: Optional[float] = None
    refine_iters: int = 1

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.phi_d > 0:
            raise ConfigurationError(f"phi_d must be positive, got {self.phi_d}")
        if not 0 < self.delta_phi < self.phi_d:
            raise ConfigurationError(f"need 0 < delta_phi < phi_d, got {self.delta_phi} / {self.phi_d}")
        if self.refine_tol < 0:
            raise ConfigurationError("refine_tol must be non-negative")
        if self.backtrack is not None and self.backtrack < 0:
            raise ConfigurationError("backtrack must be non-negative")
        if self.refine_iters < 1:
            raise ConfigurationError("refine_iters must be at least 1")


@dataclass(frozen=True)
class DistanceResult:
    dist: float
    phi_star: float
    point: tuple[float, float, float]


def _result(curve: ParametricCurve, center, phi: float) -> DistanceResult:
    p = curve.point_fn(phi)
    p = (float(p[0]), float(p[1]), float(p[2]))
    d = math.sqrt((p[0] - center[0]) ** 2 + (p[1] - center[1]) ** 2 + (p[2] - center[2]) ** 2)
    return DistanceResult(d, phi, p)


def window_params(curve: ParametricCurve, phi_hint: float, cfg: DistanceConfig) -> tuple[float, float, float]:
    """Return ``(half_width, pitch, backtrack)`` for a search around ``phi_hint``."""
    if cfg.adaptive:
        g = speed(curve, min(max(phi_hint, curve.phi_min), curve.phi_max))
        half = ADAPTIVE_ARC / g if g > 0 else curve.span
        half = min(half, curve.span)
        pitch = half / ADAPTIVE_SAMPLES
    else:
        half, pitch = cfg.phi_d, cfg.delta_phi
    back = half if cfg.backtrack is None else cfg.backtrack
    return half, pitch, back


def _project(curve: ParametricCurve, center, phi_hint: float) -> float:
    if curve.projection_fn is None:
        raise ProjectionUnavailable("curve has no closed-form parameter projection")
    phi = float(curve.projection_fn(center, phi_hint))
    return min(max(phi, curve.phi_min), curve.phi_max)


def dist_v1(curve: ParametricCurve, center: Sequence[float], phi_hint: float) -> DistanceResult:
    """Distance to the curve point at the projected parameter."""
    return _result(curve, center, _project(curve, center, phi_hint))


def _sqdist_fn(curve: ParametricCurve, center):
    c = np.asarray(center, dtype=float).reshape(3, 1)

    def f(phis):
        d = curve.points(phis) - c
        return np.einsum("ij,ij->j", d, d)

    return f


def _scan(curve: ParametricCurve, center, phi_hint: float, cfg: DistanceConfig):
    half, pitch, back = window_params(curve, phi_hint, cfg)
    lower = max(curve.phi_min, phi_hint - back)
    upper = curve.phi_max
    if lower > upper:
        raise EmptyWindow(f"search window empty at phi_hint={phi_hint}")
    try:
        anchor = _project(curve, center, phi_hint)
    except (ProjectionUnavailable, OnAxis):
        anchor = phi_hint
    anchor = min(max(anchor, lower), upper)
    lo = max(lower, anchor - half)
    hi = min(upper, anchor + half)
    if curve.cyl is not None:
        return kernels.cyl_scan_min(curve.cyl.as_tuple(), float(center[0]), float(center[1]), float(center[2]),
                                    anchor, lo, hi, pitch)
    return kernels.scan_min(_sqdist_fn(curve, center), anchor, lo, hi, pitch)


def dist_v2(curve: ParametricCurve, center: Sequence[float], phi_hint: float, cfg: DistanceConfig) -> DistanceResult:
    """Minimum over the sampled window (which always contains the projection)."""
    _, _, phi, _, _, _ = _scan(curve, center, phi_hint, cfg)
    return _result(curve, center, phi)


def parabolic_vertex(p1: float, p2: float, p3: float, f1: float, f2: float, f3: float) -> Optional[float]:
    """Abscissa of the vertex of the parabola through three points.

    Returns ``None`` when the points are collinear.
    """
    a = (p2 - p1) * (f2 - f3)
    b = (p2 - p3) * (f2 - f1)
    den = a - b
    if den == 0.0:
        return None
    num = (p2 - p1) * a - (p2 - p3) * b
    v = p2 - 0.5 * num / den
    return v if math.isfinite(v) else None


def _sqdist1(curve: ParametricCurve, center, phi: float) -> float:
    if curve.cyl is not None:
        return kernels.cyl_sqdist1(curve.cyl.as_tuple(), float(center[0]), float(center[1]), float(center[2]), phi)
    p = curve.point_fn(phi)
    return (p[0] - center[0]) ** 2 + (p[1] - center[1]) ** 2 + (p[2] - center[2]) ** 2


def dist_v3(curve: ParametricCurve, center: Sequence[float], phi_hint: float, cfg: DistanceConfig) -> DistanceResult:
    """Window scan plus parabolic refinement of ``D^2`` around the sampled minimum.

    The refined parameter is kept only if it beats the scan minimum by more
    than ``refine_tol``; without an interior bracket the scan result stands.
    """
    p1, f1, p2, f2, p3, f3 = _scan(curve, center, phi_hint, cfg)
    best_phi, best = p2, f2
    for _ in range(cfg.refine_iters):
        if math.isnan(f1) or math.isnan(f3) or not (f1 > f2 and f3 > f2):
            break
        v = parabolic_vertex(p1, p2, p3, f1, f2, f3)
        if v is None or not p1 < v < p3:
            break
        fv = _sqdist1(curve, center, v)
        if not math.sqrt(fv) < math.sqrt(f2) - cfg.refine_tol:
            break
        best_phi, best = v, fv
        if v < p2:
            p1, f1, p2, f2, p3, f3 = p1, f1, v, fv, p2, f2
        else:
            p1, f1, p2, f2, p3, f3 = p2, f2, v, fv, p3, f3
    return _result(curve, center, best_phi)


def estimate(curve: ParametricCurve, center: Sequence[float], phi_hint: float, cfg: DistanceConfig) -> DistanceResult:
    """Dispatch to the estimator selected by ``cfg.variant``."""
    if cfg.variant is Variant.V1:
        return dist_v1(curve, center, phi_hint)
    if cfg.variant is Variant.V2:
        return dist_v2(curve, center, phi_hint, cfg)
    return dist_v3(curve, center, phi_hint, cfg)


def _golden_min(f, a: float, b: float, tol: float) -> tuple[float, float]:
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def oracle_nearest(
    curve: ParametricCurve,
    center: Sequence[float],
    n_samples: int = 20000,
    n_refine: int = 4,
) -> DistanceResult:
    """Global nearest point by dense scan plus golden-section refinement.

    The ``n_refine`` lowest sampled local minima are each refined to
    ``1e-10`` in parameter, so two nearly equal basins cannot hide the true
    minimum behind a coarse sample.
    """
    if n_samples < 1000:
        raise ConfigurationError("oracle needs at least 1000 samples")
    phis = np.linspace(curve.phi_min, curve.phi_max, n_samples)
    if curve.cyl is not None:
        d2 = kernels.cyl_sqdist(curve.cyl.as_tuple(), float(center[0]), float(center[1]), float(center[2]), phis)
    else:
        d2 = _sqdist_fn(curve, center)(phis)
    # local minima of the sampled profile, endpoints included
    left = np.concatenate(([np.inf], d2[:-1]))
    right = np.concatenate((d2[1:], [np.inf]))
    idx = np.flatnonzero((d2 <= left) & (d2 <= right))
    idx = idx[np.argsort(d2[idx], kind="stable")][:n_refine]

    best_phi = float(phis[idx[0]])
    best = float(d2[idx[0]])
    f = lambda p: _sqdist1(curve, center, p)
    for k in idx:
        a = float(phis[max(k - 1, 0)])
        b = float(phis[min(k + 1, n_samples - 1)])
        x, fx = _golden_min(f, a, b, ORACLE_TOL)
        if fx < best:
            best_phi, best = x, fx
    return _result(curve, center, best_phi)
