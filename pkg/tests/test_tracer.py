import dataclasses
import math

import numpy as np
import pytest

from conftest import make_curve
from line_oracle import bresenham3d, point_segment_distance
from voxcurve import CylCurveParams, ParametricCurve, cylinder_curve, segment_curve
from voxcurve.distance import DistanceConfig, Variant, window_params
from voxcurve.errors import (
    DegenerateTangent,
    EmptySequence,
    EndOutOfVolume,
    StartOutOfVolume,
    VoxelizationDiverged,
)
from voxcurve.grid import HALF_DIAGONAL, Grid, chebyshev, is_neighbor, point_to_voxel, voxel_center, voxel_contains
from voxcurve.tracer import TangentMode, TraceConfig, adjacency_audit, error_metrics, trace, verify_against_oracle

G128 = Grid(128)


def cfg(variant="V3", grid=G128, **kw):
    return TraceConfig(grid=grid, distance=DistanceConfig(variant=variant), **kw)


def test_error_metrics():
    assert error_metrics([0.1, 0.5, 0.3]) == pytest.approx((0.5, 0.3))
    assert error_metrics([0.4]) == (0.4, 0.4)
    assert error_metrics([0.0] * 7) == (0.0, 0.0)
    with pytest.raises(EmptySequence):
        error_metrics([])


def test_adjacency_audit_examples():
    assert adjacency_audit([(0, 0, 0), (1, 0, 0), (2, 0, 0)]) == []
    # (1,1,0) touches three members, the last voxel touches two instead of one
    assert adjacency_audit([(0, 0, 0), (1, 1, 0), (1, 2, 0), (2, 2, 0)]) == [(1, 3), (3, 2)]
    assert adjacency_audit([(4, 4, 4)]) == []


def test_adjacency_audit_matches_pairwise_enumeration():
    rng = np.random.default_rng(2)
    for _ in range(50):
        seq = [tuple(v) for v in rng.integers(0, 4, size=(rng.integers(2, 12), 3))]
        n = len(seq)
        expected = []
        for k in range(n):
            count = sum(1 for m in range(n) if m != k and chebyshev(seq[k], seq[m]) <= 1)
            want = 1 if k in (0, n - 1) else 2
            if count != want:
                expected.append((k, count))
        assert adjacency_audit(seq) == expected


def test_straight_segment_example():
    S, E = (10.2, 10.2, 10.2), (20.7, 15.3, 12.9)
    r = trace(segment_curve(S, E), cfg("V3"))
    a, b = point_to_voxel(G128, S), point_to_voxel(G128, E)
    assert r.n_voxels == chebyshev(a, b) + 1 == 11
    ref = bresenham3d(a, b)
    assert len(ref) == r.n_voxels
    for v in list(r.sequence) + ref:
        assert point_segment_distance(voxel_center(v), S, E) <= HALF_DIAGONAL


def test_random_segments_stay_within_half_diagonal():
    rng = np.random.default_rng(0)
    for _ in range(100):
        S = rng.uniform(1, 127, 3)
        E = np.clip(S + rng.uniform(-30, 30, 3), 0.5, 127.5)
        r = trace(segment_curve(S, E), cfg("V3"))
        assert r.sequence[0] == point_to_voxel(G128, S)
        assert r.sequence[-1] == point_to_voxel(G128, E)
        assert all(is_neighbor(p, q) for p, q in zip(r.sequence, r.sequence[1:]))
        assert max(point_segment_distance(voxel_center(v), S, E) for v in r.sequence) <= HALF_DIAGONAL
        assert r.n_voxels >= len(bresenham3d(r.sequence[0], r.sequence[-1]))


def test_curve_inside_one_voxel():
    tiny = cylinder_curve(CylCurveParams(R=0.1, A=0.1, omega=2, x0=20.5, y0=20.5, z0=20.3, phi_min=0, phi_max=0.5))
    r = trace(tiny, cfg())
    assert r.sequence == ((20, 20, 20),)
    assert r.steps_taken == 0
    assert r.adjacency_violations == ()


def test_single_voxel_on_center_verifies_to_zero():
    pt = ParametricCurve(point_fn=lambda f: (5.5, 5.5, 5.5 + 1e-3 * f), phi_min=0, phi_max=1)
    r = trace(pt, cfg("V2"))
    assert r.n_voxels == 1
    assert verify_against_oracle(pt, r.sequence, r.dists, 2000).max_oracle == pytest.approx(0, abs=1e-9)


@pytest.fixture(scope="module")
def reference_traces():
    out = {}
    for H in (128, 256):
        s = H / 128
        for omega in (2, 4):
            params = CylCurveParams(R=40 * s, A=40 * s, omega=omega, x0=50 * s, y0=50 * s, z0=H / 2 - 40 * s)
            curve = cylinder_curve(params, Grid(H))
            for variant in ("V1", "V2", "V3"):
                out[H, omega, variant] = (curve, trace(curve, cfg(variant, Grid(H))))
    return out


def test_reference_invariants(reference_traces):
    for (H, omega, variant), (curve, r) in reference_traces.items():
        S, E = curve.point_fn(curve.phi_min), curve.point_fn(curve.phi_max)
        assert voxel_contains(r.sequence[0], S) and voxel_contains(r.sequence[-1], E)
        assert all(is_neighbor(p, q) for p, q in zip(r.sequence, r.sequence[1:]))
        assert len(r.sequence) == len(r.dists) == len(r.phis)
        assert r.eps_av <= r.eps_max == max(r.dists)
        if variant != "V1":
            # windows never reach further back than their half-width
            dcfg = DistanceConfig(variant=variant)
            for a, b in zip(r.phis, r.phis[1:]):
                assert b >= a - window_params(curve, a, dcfg)[2] - 1e-12


def test_table_iv_v1_voxel_count(reference_traces):
    assert abs(reference_traces[128, 4, "V1"][1].n_voxels - 660) <= 66


def test_oracle_verification_examples(reference_traces):
    curve, r = reference_traces[128, 2, "V3"]
    rep = verify_against_oracle(curve, r.sequence, r.dists)
    assert rep.n_exceeding == 0 and rep.sound
    curve, r = reference_traces[256, 4, "V1"]
    rep = verify_against_oracle(curve, r.sequence, r.dists)
    assert rep.n_exceeding >= 1 and rep.sound


def test_determinism():
    curve = make_curve(omega=4)
    a = trace(curve, cfg("V3"))
    b = trace(curve, cfg("V3"))
    assert a == b


def test_reparameterization_keeps_sequence():
    base = make_curve(omega=2)
    x0, y0, z0, R, A, w = base.cyl.as_tuple()
    fast = ParametricCurve(
        point_fn=lambda f: base.point_fn(f / 2),
        tangent_fn=lambda f: tuple(0.5 * g for g in base.tangent_fn(f / 2)),
        phi_min=2 * base.phi_min,
        phi_max=2 * base.phi_max,
    )
    slow = dataclasses.replace(base, projection_fn=None, cyl=None)
    a = trace(slow, cfg("V3"))
    b = trace(fast, cfg("V3"))
    assert a.sequence == b.sequence
    assert np.allclose(a.dists, b.dists, atol=1e-9)


def test_finite_difference_mode_runs():
    curve = make_curve(omega=2)
    r = trace(curve, cfg("V2", tangent_mode=TangentMode.FINITE_DIFFERENCE, fd_step=1e-4))
    assert r.n_voxels > 300


def test_errors():
    with pytest.raises(StartOutOfVolume):
        trace(segment_curve((-1, 5, 5), (5, 5, 5)), cfg())
    with pytest.raises(EndOutOfVolume):
        trace(segment_curve((5, 5, 5), (5, 5, 128)), cfg())
    with pytest.raises(VoxelizationDiverged):
        trace(make_curve(omega=4), cfg(max_steps=5))
    cubic = ParametricCurve(
        point_fn=lambda f: (5 + 10 * f**3, 5.5, 5.5),
        tangent_fn=lambda f: (30 * f**2, 0.0, 0.0),
        phi_min=0.0,
        phi_max=1.0,
    )
    with pytest.raises(DegenerateTangent):
        trace(cubic, cfg())
