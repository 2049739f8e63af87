"""Stacked-solid generation from the level recurrences.

Each level shrinks its width by a fixed factor (default 2/3) and grows
its height by the inverse factor (default 3/2); with the defaults any
three consecutive levels realize the 9:6:4 width and 4:6:9 height
progressions. Rasterization stacks the levels as concentric solids on a
shared vertical axis. All functions are pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .grid import VoxelGrid

BASE_SHAPES = ("square", "circle", "sphere")
DEFAULT_WIDTH_FACTOR = 2.0 / 3.0
DEFAULT_HEIGHT_FACTOR = 3.0 / 2.0


@dataclass(frozen=True)
class StackSpec:
    base_shape: str
    x0: float            # width/diameter of level 0, model units
    y0: float            # height of level 0, model units
    levels: int
    r_h: float = DEFAULT_WIDTH_FACTOR
    r_v: float = DEFAULT_HEIGHT_FACTOR

    def __post_init__(self):
        if self.base_shape not in BASE_SHAPES:
            raise InvalidArgumentError(
                f"base_shape must be one of {BASE_SHAPES}, got {self.base_shape!r}")
        if not (self.x0 > 0 and self.y0 > 0):
            raise InvalidArgumentError("x0 and y0 must be > 0")
        if not (0.0 < self.r_h < 1.0):
            raise InvalidArgumentError(f"r_h must be in (0, 1), got {self.r_h}")
        if not (self.r_v > 1.0):
            raise InvalidArgumentError(f"r_v must be > 1, got {self.r_v}")
        if self.levels < 1:
            raise InvalidArgumentError(f"levels must be >= 1, got {self.levels}")


@dataclass(frozen=True)
class LevelEntry:
    level: int
    width: float
    height: float


@dataclass(frozen=True)
class LevelSequence:
    entries: tuple[LevelEntry, ...]

    @property
    def widths(self) -> tuple[float, ...]:
        return tuple(e.width for e in self.entries)

    @property
    def heights(self) -> tuple[float, ...]:
        return tuple(e.height for e in self.entries)


@dataclass(frozen=True)
class StackRaster:
    """Rasterization result; `truncated_at` is the first level whose width
    rounded below one voxel (None when every requested level was built)."""
    grid: VoxelGrid
    level_dims: tuple[tuple[int, int, int], ...]  # (level, width_vox, thickness_vox)
    truncated_at: int | None = None


def level_sequence(spec: StackSpec) -> LevelSequence:
    """Apply the width/height recurrences for the requested level count."""
    entries = []
    w, h = float(spec.x0), float(spec.y0)
    for l in range(spec.levels):
        entries.append(LevelEntry(level=l, width=w, height=h))
        w = w * spec.r_h
        h = h * spec.r_v
    return LevelSequence(entries=tuple(entries))


def ratio_check(seq: LevelSequence, target=(9.0, 6.0, 4.0)) -> float:
    """Max deviation of the first three normalized widths from `target`.

    Zero means the sequence matches the target ratio exactly; the measure
    is invariant under uniform scaling of the widths.
    """
    if len(seq.entries) < 3:
        raise InvalidArgumentError("ratio check needs at least 3 levels")
    widths = seq.widths[:3]
    return max(abs(widths[i] / widths[0] - target[i] / target[0]) for i in range(3))


def _round_half_away(v: float) -> int:
    return int(math.floor(v + 0.5))


def rasterize_stack(spec: StackSpec, resolution: int) -> StackRaster:
    """Rasterize the level stack onto a grid with `resolution` voxels
    spanning the level-0 width.

    Square bases become centered square prisms of the rounded level width;
    circle bases become cylinders (a cell counts when its center lies
    within the level radius); sphere bases are the cylinder stack with
    cells cleared outside the enclosing sphere of diameter x0 centered at
    the stack's vertical midpoint. A level whose width rounds below one
    voxel truncates the stack there; that is recorded, not an error.
    """
    if int(resolution) != resolution or resolution < 1:
        raise InvalidArgumentError(f"resolution must be an integer >= 1, got {resolution}")
    resolution = int(resolution)
    voxel_size = spec.x0 / resolution

    seq = level_sequence(spec)
    level_dims: list[tuple[int, int, int]] = []
    truncated_at = None
    for e in seq.entries:
        w_vox = _round_half_away(e.width * resolution / spec.x0)
        if w_vox < 1:
            truncated_at = e.level
            break
        t_vox = max(1, _round_half_away(e.height * resolution / spec.x0))
        level_dims.append((e.level, w_vox, t_vox))

    total_thickness = sum(t for _, _, t in level_dims)
    occ = np.zeros((resolution, resolution, total_thickness), dtype=np.bool_)

    axis = spec.x0 / 2.0
    centers = (np.arange(resolution) + 0.5) * voxel_size
    z0 = 0
    for level, w_vox, t_vox in level_dims:
        if spec.base_shape == "square":
            off = (resolution - w_vox) // 2
            occ[off:off + w_vox, off:off + w_vox, z0:z0 + t_vox] = True
        else:
            radius = seq.entries[level].width / 2.0
            in_disk = ((centers[:, None] - axis) ** 2
                       + (centers[None, :] - axis) ** 2) <= radius * radius
            occ[:, :, z0:z0 + t_vox] |= in_disk[:, :, None]
        z0 += t_vox

    if spec.base_shape == "sphere" and total_thickness:
        z_centers = (np.arange(total_thickness) + 0.5) * voxel_size
        z_mid = total_thickness * voxel_size / 2.0
        r_sq = (spec.x0 / 2.0) ** 2
        dist_sq = ((centers[:, None, None] - axis) ** 2
                   + (centers[None, :, None] - axis) ** 2
                   + (z_centers[None, None, :] - z_mid) ** 2)
        occ &= dist_sq <= r_sq

    grid = VoxelGrid(occ, voxel_size, (0.0, 0.0, 0.0))
    return StackRaster(grid=grid, level_dims=tuple(level_dims),
                       truncated_at=truncated_at)
