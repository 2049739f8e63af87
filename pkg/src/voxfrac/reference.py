"""Exact reference solids with known box-counting dimensions.

Used as known-answer fixtures: full cube (dimension 3), one-voxel slab
(dimension 2), and the Menger sponge (ln 20 / ln 3 ~ 2.7268).
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .grid import VoxelGrid

MAX_MENGER_DEPTH = 6
_MAX_CELLS = 3 ** 18  # menger depth 6; the desk-scale memory ceiling

# 3x3x3 sponge stencil: drop the body center and the six face centers.
_coords = np.indices((3, 3, 3))
_SPONGE_MASK = (_coords == 1).sum(axis=0) < 2
del _coords


def _menger(depth: int) -> np.ndarray:
    occ = np.ones((1, 1, 1), dtype=np.bool_)
    for _ in range(depth):
        n = occ.shape[0]
        occ = (occ[:, None, :, None, :, None]
               & _SPONGE_MASK[None, :, None, :, None, :]).reshape(3 * n, 3 * n, 3 * n)
    return occ


def gen_reference(kind: str, depth_or_size: int) -> VoxelGrid:
    """Generate a reference solid; `depth_or_size` is the Menger recursion
    depth (grid side 3**d) or the cube/slab edge length in voxels."""
    if int(depth_or_size) != depth_or_size:
        raise InvalidArgumentError(f"depth_or_size must be an integer, got {depth_or_size}")
    n = int(depth_or_size)
    if kind == "menger":
        if n < 0:
            raise InvalidArgumentError(f"menger depth must be >= 0, got {n}")
        if n > MAX_MENGER_DEPTH:
            raise ResourceLimitError(
                f"menger depth {n} exceeds the supported maximum {MAX_MENGER_DEPTH}")
        occ = _menger(n)
    elif kind == "cube":
        if n < 1:
            raise InvalidArgumentError(f"cube size must be >= 1, got {n}")
        if n ** 3 > _MAX_CELLS:
            raise ResourceLimitError(f"cube of side {n} exceeds {_MAX_CELLS} cells")
        occ = np.ones((n, n, n), dtype=np.bool_)
    elif kind == "slab":
        if n < 1:
            raise InvalidArgumentError(f"slab size must be >= 1, got {n}")
        if n * n > _MAX_CELLS:
            raise ResourceLimitError(f"slab of side {n} exceeds {_MAX_CELLS} cells")
        occ = np.ones((n, n, 1), dtype=np.bool_)
    else:
        raise InvalidArgumentError(f"unknown reference kind {kind!r}")
    return VoxelGrid(occ, 1.0, (0.0, 0.0, 0.0))
