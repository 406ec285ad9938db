import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from voxcurve.errors import ConfigurationError, OutOfVolume
from voxcurve.grid import (
    HALF_DIAGONAL,
    Grid,
    VoxelIndex,
    chebyshev,
    is_neighbor,
    manhattan,
    point_to_voxel,
    voxel_center,
)

G = Grid(128)
idx = st.integers(0, 127)
voxels = st.builds(VoxelIndex, idx, idx, idx)


def test_grid_validation():
    assert Grid(128).n_voxels == 2_097_152
    for bad in (1, 0, -3, 5000, 2.5):
        with pytest.raises(ConfigurationError):
            Grid(bad)
    with pytest.raises(OutOfVolume):
        G.voxel(128, 0, 0)


@pytest.mark.parametrize(
    "v, c",
    [((0, 0, 0), (0.5, 0.5, 0.5)), ((3, 4, 5), (3.5, 4.5, 5.5)), ((127, 127, 127), (127.5, 127.5, 127.5))],
)
def test_voxel_center(v, c):
    assert voxel_center(v) == c


@pytest.mark.parametrize(
    "p, v",
    [((0.5, 0.5, 0.5), (0, 0, 0)), ((3.0, 4.999, 5.0), (3, 4, 5)), ((90.0, 50.0, 50.0), (90, 50, 50))],
)
def test_point_to_voxel(p, v):
    assert point_to_voxel(G, p) == v


@pytest.mark.parametrize("p", [(-1e-12, 1, 1), (1, 128.0, 1), (1, 1, 200)])
def test_point_to_voxel_outside(p):
    with pytest.raises(OutOfVolume):
        point_to_voxel(G, p)


def test_neighbor_and_manhattan_examples():
    assert is_neighbor((5, 5, 5), (6, 6, 6))
    assert not is_neighbor((5, 5, 5), (5, 5, 5))
    assert not is_neighbor((5, 5, 5), (7, 5, 5))
    assert manhattan((1, 2, 3), (1, 2, 3)) == 0
    assert manhattan((1, 2, 3), (2, 2, 4)) == 2
    assert manhattan((0, 0, 0), (1, 1, 1)) == 3


def test_manhattan_metric_axioms_bulk():
    rng = np.random.default_rng(7)
    a, b, c = (rng.integers(0, 128, size=(100_000, 3)) for _ in range(3))
    m = lambda u, v: np.abs(u - v).sum(axis=1)
    ab, ba, bc, ac = m(a, b), m(b, a), m(b, c), m(a, c)
    assert (ab >= 0).all()
    assert (ab == ba).all()
    assert ((ab == 0) == (a == b).all(axis=1)).all()
    assert (ac <= ab + bc).all()
    # the scalar function agrees with the vectorized reference
    for k in range(0, 100_000, 997):
        assert manhattan(a[k], b[k]) == ab[k]


@given(voxels, voxels)
def test_neighbor_consistent_with_manhattan(a, b):
    assert is_neighbor(a, b) == (manhattan(a, b) in (1, 2, 3) and chebyshev(a, b) == 1)


@given(voxels)
def test_center_round_trip(v):
    assert point_to_voxel(G, voxel_center(v)) == v


def test_neighborhood_sizes():
    assert len(list(G.neighbors((10, 10, 10)))) == 26
    assert len(list(G.neighbors((0, 0, 0)))) == 7
    assert len(list(G.neighbors((127, 127, 127)))) == 7
    assert len(list(G.neighbors((0, 5, 5)))) == 17


@given(voxels, st.tuples(*[st.floats(0, 1 - 1e-9)] * 3))
def test_half_diagonal_bound(v, frac):
    p = (v[0] + frac[0], v[1] + frac[1], v[2] + frac[2])
    assert point_to_voxel(G, p) == v
    assert math.dist(p, voxel_center(v)) <= HALF_DIAGONAL + 1e-12
    assert HALF_DIAGONAL == pytest.approx(0.8660254, abs=1e-7)
