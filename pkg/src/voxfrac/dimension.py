"""Cube counting and the box-counting dimension fit.

Box lattices are anchored at the grid origin; partial boxes at the far
faces count when they contain an occupied cell. The dimension is the
unweighted least-squares slope of ln(count) against ln(1/epsilon).
Counting is pure and deterministic; results do not depend on how the box
lattice might be partitioned across workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGridError, InsufficientDataError, InvalidArgumentError
from .grid import VoxelGrid


@dataclass(frozen=True)
class ScaleCount:
    """Number of occupied boxes at one box size."""
    box_side: int    # in voxels
    epsilon: float   # box edge in model units, box_side * voxel_size
    count: int

    def __post_init__(self):
        if self.box_side < 1:
            raise InvalidArgumentError(f"box_side must be >= 1, got {self.box_side}")
        if not (self.epsilon > 0):
            raise InvalidArgumentError(f"epsilon must be > 0, got {self.epsilon}")
        if self.count < 1:
            raise InvalidArgumentError(f"count must be >= 1, got {self.count}")


@dataclass(frozen=True)
class DimensionFit:
    dimension: float
    intercept: float
    r_squared: float
    scales_used: tuple[ScaleCount, ...]
    residuals: tuple[float, ...]


def _ols(x: np.ndarray, y: np.ndarray):
    """Least squares y = intercept + slope*x; returns residuals and r^2."""
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    denom = float((dx * dx).sum())
    slope = float((dx * (y - ym)).sum()) / denom
    intercept = float(ym - slope * xm)
    residuals = y - (intercept + slope * x)
    ss_res = float((residuals * residuals).sum())
    ss_tot = float(((y - ym) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return slope, intercept, r_squared, residuals


def box_count(grid: VoxelGrid, box_side: int) -> ScaleCount:
    """Count origin-anchored boxes of `box_side` voxels holding occupancy."""
    occ = grid.occupancy
    if not occ.any():
        raise EmptyGridError("box counting is undefined on an empty grid")
    if int(box_side) != box_side:
        raise InvalidArgumentError(f"box_side must be an integer, got {box_side}")
    s = int(box_side)
    if not (1 <= s <= max(occ.shape)):
        raise InvalidArgumentError(
            f"box_side must be in [1, {max(occ.shape)}], got {s}")
    if s == 1:
        n = int(occ.sum())
    else:
        blocks = occ
        for axis in range(3):
            edges = np.arange(0, blocks.shape[axis], s)
            blocks = np.maximum.reduceat(blocks, edges, axis=axis)
        n = int(np.count_nonzero(blocks))
    return ScaleCount(box_side=s, epsilon=s * grid.voxel_size, count=n)


def cube_count_dyadic(grid: VoxelGrid) -> list[ScaleCount]:
    """Counts at box sides 2**m, ..., 2, 1 (coarse to fine).

    The grid is conceptually padded with empty cells to the smallest
    enclosing power-of-two cube, placed at its low corner; each coarser
    level is the 2x2x2 OR-reduction of the previous one, so the whole
    ladder costs barely more than the finest count.
    """
    occ = grid.occupancy
    if not occ.any():
        raise EmptyGridError("box counting is undefined on an empty grid")
    m = max(0, *(int(math.ceil(math.log2(d))) for d in occ.shape))
    side = 1 << m
    level = np.zeros((side, side, side), dtype=np.bool_)
    level[:occ.shape[0], :occ.shape[1], :occ.shape[2]] = occ

    counts = [int(level.sum())]
    for _ in range(m):
        n = level.shape[0] // 2
        level = level.reshape(n, 2, n, 2, n, 2).any(axis=(1, 3, 5))
        counts.append(int(level.sum()))

    return [ScaleCount(box_side=1 << k, epsilon=(1 << k) * grid.voxel_size,
                       count=counts[k])
            for k in range(m, -1, -1)]


def fit_dimension(scales, discard_low: int = 0,
                  discard_high: int = 0) -> DimensionFit:
    """OLS fit of ln(count) on ln(1/epsilon) over the retained scales.

    `discard_low` drops the finest scales (smallest epsilon, where
    voxelization artifacts dominate); `discard_high` drops the coarsest
    (where the count saturates near 1).
    """
    if discard_low < 0 or discard_high < 0:
        raise InvalidArgumentError("discard counts must be >= 0")
    ordered = sorted(scales, key=lambda sc: sc.epsilon)
    kept = ordered[discard_low:len(ordered) - discard_high]
    if len(kept) < 2:
        raise InsufficientDataError(
            f"need >= 2 scales after discarding, have {len(kept)}")
    eps = np.array([sc.epsilon for sc in kept], dtype=np.float64)
    if len(np.unique(eps)) < 2:
        raise InsufficientDataError("need >= 2 distinct epsilon values")
    x = -np.log(eps)
    y = np.log(np.array([sc.count for sc in kept], dtype=np.float64))
    slope, intercept, r_squared, residuals = _ols(x, y)
    return DimensionFit(dimension=slope, intercept=intercept,
                        r_squared=r_squared, scales_used=tuple(kept),
                        residuals=tuple(float(r) for r in residuals))
