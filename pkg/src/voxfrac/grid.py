"""Axis-aligned voxel occupancy grids.

A grid is a dense block of nx*ny*nz cells with a physical edge length per
cell and a model-space origin at the min corner of cell (0, 0, 0). The
linear cell order is x fastest, then y, then z; the on-disk bit layout in
``formats`` depends on this contract. Grids are value types: two grids are
equal iff dims, voxel size, origin and cell-by-cell occupancy all match.
All read accessors are safe for concurrent use.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError

Triple = tuple[float, float, float]


class VoxelGrid:
    """Dense boolean occupancy over an axis-aligned lattice."""

    __slots__ = ("_occ", "_voxel_size", "_origin")

    def __init__(self, occupancy: np.ndarray, voxel_size: float, origin: Triple):
        # Internal constructor: takes ownership of `occupancy`.
        if occupancy.ndim != 3 or occupancy.dtype != np.bool_:
            raise InvalidArgumentError("occupancy must be a 3-d bool array")
        if min(occupancy.shape) < 1:
            raise InvalidArgumentError(f"all dims must be >= 1, got {occupancy.shape}")
        if not (float(voxel_size) > 0.0):
            raise InvalidArgumentError(f"voxel_size must be > 0, got {voxel_size}")
        self._occ = occupancy
        self._voxel_size = float(voxel_size)
        self._origin = (float(origin[0]), float(origin[1]), float(origin[2]))

    @classmethod
    def from_array(cls, occupancy, voxel_size: float = 1.0,
                   origin: Triple = (0.0, 0.0, 0.0)) -> "VoxelGrid":
        """Build a grid from any array-like of shape (nx, ny, nz); copies."""
        arr = np.array(occupancy, dtype=np.bool_)
        return cls(arr, voxel_size, origin)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self._occ.shape

    @property
    def voxel_size(self) -> float:
        return self._voxel_size

    @property
    def origin(self) -> Triple:
        return self._origin

    @property
    def occupancy(self) -> np.ndarray:
        """Read-only view of the occupancy array, indexed [x, y, z]."""
        view = self._occ.view()
        view.flags.writeable = False
        return view

    @property
    def occupied_count(self) -> int:
        return int(self._occ.sum())

    def is_occupied(self, x: int, y: int, z: int) -> bool:
        nx, ny, nz = self._occ.shape
        if not (0 <= x < nx and 0 <= y < ny and 0 <= z < nz):
            raise IndexError(f"cell ({x}, {y}, {z}) outside grid {self.dims}")
        return bool(self._occ[x, y, z])

    def cell_min_corner(self, x: int, y: int, z: int) -> Triple:
        """Model-space min corner of a cell (not range checked)."""
        ox, oy, oz = self._origin
        s = self._voxel_size
        return (ox + x * s, oy + y * s, oz + z * s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VoxelGrid):
            return NotImplemented
        return (self.dims == other.dims
                and self._voxel_size == other._voxel_size
                and self._origin == other._origin
                and bool(np.array_equal(self._occ, other._occ)))

    def __repr__(self) -> str:
        return (f"VoxelGrid(dims={self.dims}, voxel_size={self._voxel_size}, "
                f"origin={self._origin}, occupied={self.occupied_count})")


def make_grid(dims, voxel_size: float, origin: Triple = (0.0, 0.0, 0.0)) -> VoxelGrid:
    """Create an all-empty grid with the given cell dimensions."""
    if len(dims) != 3:
        raise InvalidArgumentError("dims must be a triple")
    for d in dims:
        if int(d) != d or int(d) < 1:
            raise InvalidArgumentError(f"dims must be positive integers, got {tuple(dims)}")
    if not (float(voxel_size) > 0.0):
        raise InvalidArgumentError(f"voxel_size must be > 0, got {voxel_size}")
    occ = np.zeros((int(dims[0]), int(dims[1]), int(dims[2])), dtype=np.bool_)
    return VoxelGrid(occ, voxel_size, origin)
