"""Power-law fit for size-frequency censuses of self-similar elements.

A census pairs an element size with how many elements of that size were
observed; the exponent is the least-squares slope on the log-log plot.
On identical scales this exponent is the exact negative of the
box-counting dimension fit (same regression, mirrored abscissa).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dimension import _ols, box_count
from .errors import InsufficientDataError, InvalidArgumentError
from .grid import VoxelGrid


@dataclass(frozen=True)
class CensusPoint:
    size: float   # model units
    count: float

    def __post_init__(self):
        if not (self.size > 0):
            raise InvalidArgumentError(f"size must be > 0, got {self.size}")
        if not (self.count > 0):
            raise InvalidArgumentError(f"count must be > 0, got {self.count}")


@dataclass(frozen=True)
class PowerLawFit:
    delta: float          # exponent of count ~ size**delta
    log_prefactor: float
    r_squared: float


def fit_power_law(points) -> PowerLawFit:
    """OLS of ln(count) on ln(size); the slope is the exponent."""
    pts = list(points)
    for p in pts:
        if not (p.size > 0 and p.count > 0):
            raise InvalidArgumentError("census sizes and counts must be > 0")
    sizes = np.array([p.size for p in pts], dtype=np.float64)
    if len(pts) < 2 or len(np.unique(sizes)) < 2:
        raise InsufficientDataError("need >= 2 census points with distinct sizes")
    x = np.log(sizes)
    y = np.log(np.array([p.count for p in pts], dtype=np.float64))
    slope, intercept, r_squared, _ = _ols(x, y)
    return PowerLawFit(delta=slope, log_prefactor=intercept, r_squared=r_squared)


def census_from_grid(grid: VoxelGrid, element_sizes) -> list[CensusPoint]:
    """Census a grid by treating occupied boxes at each size as elements."""
    return [CensusPoint(size=sc.epsilon, count=float(sc.count))
            for sc in (box_count(grid, s) for s in element_sizes)]
