"""Advance matrix: the seven trial offsets built from tangent component signs.

Column ``q`` of the matrix corresponds to one nonempty subset of the axes,
in the order ``{x}, {y}, {z}, {x,y}, {y,z}, {x,z}, {x,y,z}``. Included axes
carry the sign of the matching tangent component, excluded axes carry 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from voxcurve.errors import DegenerateTangent
from voxcurve.grid import Grid, VoxelIndex

AXIS_SUBSETS = (
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 1, 0),
    (0, 1, 1),
    (1, 0, 1),
    (1, 1, 1),
)

Offset = tuple[int, int, int]


def sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


@dataclass(frozen=True)
class StepMatrix:
    offsets: tuple[Offset, ...]

    def __post_init__(self):
        if len(self.offsets) != 7:
            raise ValueError("a step matrix has exactly 7 offsets")

    def distinct_nonzero(self) -> list[tuple[int, Offset]]:
        """``(q, offset)`` pairs with zero offsets dropped and duplicates keeping the lowest q."""
        seen = set()
        out = []
        for q, off in enumerate(self.offsets):
            if off == (0, 0, 0) or off in seen:
                continue
            seen.add(off)
            out.append((q, off))
        return out


def build_step_matrix(g: Sequence[float]) -> StepMatrix:
    s = (sign(g[0]), sign(g[1]), sign(g[2]))
    return StepMatrix(tuple((s[0] * m[0], s[1] * m[1], s[2] * m[2]) for m in AXIS_SUBSETS))


def candidates(
    v: Sequence[int],
    m: StepMatrix,
    prev: Optional[Sequence[int]],
    grid: Grid,
) -> list[tuple[int, VoxelIndex]]:
    """Trial successor voxels of ``v`` in ascending ``q``.

    Zero and duplicate offsets, the previous voxel and out-of-grid voxels are
    removed. Raises :class:`DegenerateTangent` when nothing survives.
    """
    prev = tuple(prev) if prev is not None else None
    out = []
    for q, off in m.distinct_nonzero():
        c = VoxelIndex(v[0] + off[0], v[1] + off[1], v[2] + off[2])
        if c == prev or not grid.contains_index(c):
            continue
        out.append((q, c))
    if not out:
        raise DegenerateTangent(f"no admissible successor for voxel {tuple(v)} with offsets {m.offsets}")
    return out
