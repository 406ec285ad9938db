"""Bounded cubic voxel space, voxel indexing and discrete metrics.

A voxel ``(i, j, l)`` occupies the half-open cube
``[i, i+1) x [j, j+1) x [l, l+1)``, so every point of ``[0, H)^3`` belongs to
exactly one voxel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from voxcurve.errors import ConfigurationError, OutOfVolume

HALF_DIAGONAL = math.sqrt(3.0) / 2.0

MAX_RESOLUTION = 4096


class VoxelIndex(NamedTuple):
    i: int
    j: int
    l: int


@dataclass(frozen=True)
class Grid:
    """Cubic voxel space with ``H`` voxels per axis."""

    H: int

    def __post_init__(self):
        if not isinstance(self.H, int) or isinstance(self.H, bool):
            raise ConfigurationError(f"grid resolution must be an integer, got {self.H!r}")
        if not 2 <= self.H <= MAX_RESOLUTION:
            raise ConfigurationError(f"grid resolution must lie in [2, {MAX_RESOLUTION}], got {self.H}")

    @property
    def n_voxels(self) -> int:
        return self.H**3

    def contains_index(self, v: Sequence[int]) -> bool:
        H = self.H
        return 0 <= v[0] < H and 0 <= v[1] < H and 0 <= v[2] < H

    def contains_point(self, p: Sequence[float]) -> bool:
        H = self.H
        return 0.0 <= p[0] < H and 0.0 <= p[1] < H and 0.0 <= p[2] < H

    def voxel(self, i: int, j: int, l: int) -> VoxelIndex:
        """Build a bounds-checked :class:`VoxelIndex`."""
        v = VoxelIndex(int(i), int(j), int(l))
        if not self.contains_index(v):
            raise OutOfVolume(f"voxel {tuple(v)} outside grid of resolution {self.H}")
        return v

    def neighbors(self, v: Sequence[int]) -> Iterator[VoxelIndex]:
        """Yield the 26-neighbourhood of ``v`` clipped to the grid."""
        for d in product((-1, 0, 1), repeat=3):
            if d == (0, 0, 0):
                continue
            n = VoxelIndex(v[0] + d[0], v[1] + d[1], v[2] + d[2])
            if self.contains_index(n):
                yield n


def voxel_center(v: Sequence[int]) -> tuple[float, float, float]:
    return (v[0] + 0.5, v[1] + 0.5, v[2] + 0.5)


def point_to_voxel(grid: Grid, p: Sequence[float]) -> VoxelIndex:
    """Return the voxel whose half-open cube contains ``p``.

    Raises :class:`OutOfVolume` if any coordinate is negative or ``>= H``.
    """
    if not grid.contains_point(p):
        raise OutOfVolume(f"point {tuple(p)} outside [0, {grid.H})^3")
    return VoxelIndex(math.floor(p[0]), math.floor(p[1]), math.floor(p[2]))


def voxel_contains(v: Sequence[int], p: Sequence[float]) -> bool:
    return (
        v[0] <= p[0] < v[0] + 1
        and v[1] <= p[1] < v[1] + 1
        and v[2] <= p[2] < v[2] + 1
    )


def chebyshev(a: Sequence[int], b: Sequence[int]) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]), abs(a[2] - b[2]))


def manhattan(a: Sequence[int], b: Sequence[int]) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) + abs(a[2] - b[2])


def is_neighbor(a: Sequence[int], b: Sequence[int]) -> bool:
    """26-connectivity: Chebyshev index distance exactly 1."""
    return chebyshev(a, b) == 1
