"""Independent brute-force reference implementations used as test oracles.

Everything here favors clarity over speed and deliberately avoids the
production code paths: scalar separating-axis tests per (cell, triangle)
pair, per-box triple loops for counting, and a queue-based flood fill.
"""
from __future__ import annotations

import math
from collections import deque

import numpy as np


def tri_box_overlap(box_center, half_size, v0, v1, v2, tol=0.0) -> bool:
    """Classic 13-axis separating-axis triangle/box test (closed boxes).

    `tol` inflates the box by an absolute slack so that grazing contact is
    decided identically on both sides of a float rounding boundary.
    """
    verts = [np.asarray(v, dtype=float) - np.asarray(box_center, dtype=float)
             for v in (v0, v1, v2)]
    edges = [verts[1] - verts[0], verts[2] - verts[1], verts[0] - verts[2]]
    axes = [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]),
            np.array([0.0, 0.0, 1.0]), np.cross(edges[0], edges[1])]
    for unit in np.eye(3):
        for edge in edges:
            axes.append(np.cross(unit, edge))
    h = np.asarray(half_size, dtype=float)
    for axis in axes:
        rad = h[0] * abs(axis[0]) + h[1] * abs(axis[1]) + h[2] * abs(axis[2]) + tol
        projections = [float(v @ axis) for v in verts]
        if min(projections) > rad or max(projections) < -rad:
            return False
    return True


def brute_voxelize(vertices, triangles, resolution):
    """All-pairs (cell, triangle) surface voxelization.

    Returns (occupancy, voxel_size, origin) using the same grid framing
    contract as the production path: longest bounding-box axis spans
    `resolution` voxels, one padding voxel per side.
    """
    verts = np.asarray(vertices, dtype=float)
    tris = np.asarray(triangles, dtype=int)
    used = verts[tris.reshape(-1)]
    lo = used.min(axis=0)
    hi = used.max(axis=0)
    extent = hi - lo
    voxel_size = float(extent.max()) / resolution
    dims = tuple(max(0, math.ceil(float(e) / voxel_size - 1e-9)) + 2 for e in extent)
    origin = lo - voxel_size

    occ = np.zeros(dims, dtype=bool)
    half = (voxel_size / 2.0,) * 3
    tol = 1e-9 * voxel_size  # same grazing slack as the production kernel
    for x in range(dims[0]):
        for y in range(dims[1]):
            for z in range(dims[2]):
                center = origin + (np.array([x, y, z]) + 0.5) * voxel_size
                for a, b, c in tris:
                    if tri_box_overlap(center, half, verts[a], verts[b],
                                       verts[c], tol=tol):
                        occ[x, y, z] = True
                        break
    return occ, voxel_size, origin


def naive_box_count(occ: np.ndarray, side: int) -> int:
    """Per-box triple loop over the origin-anchored lattice."""
    nx, ny, nz = occ.shape
    count = 0
    for x in range(0, nx, side):
        for y in range(0, ny, side):
            for z in range(0, nz, side):
                if occ[x:x + side, y:y + side, z:z + side].any():
                    count += 1
    return count


def bfs_solid_fill(occ: np.ndarray) -> np.ndarray:
    """Queue-based 6-connected flood fill from empty boundary cells."""
    nx, ny, nz = occ.shape
    exterior = np.zeros_like(occ)
    queue = deque()
    for x in range(nx):
        for y in range(ny):
            for z in range(nz):
                if (x in (0, nx - 1) or y in (0, ny - 1) or z in (0, nz - 1)) \
                        and not occ[x, y, z]:
                    if not exterior[x, y, z]:
                        exterior[x, y, z] = True
                        queue.append((x, y, z))
    while queue:
        x, y, z = queue.popleft()
        for dx, dy, dz in ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                           (0, -1, 0), (0, 0, 1), (0, 0, -1)):
            u, v, w = x + dx, y + dy, z + dz
            if 0 <= u < nx and 0 <= v < ny and 0 <= w < nz \
                    and not occ[u, v, w] and not exterior[u, v, w]:
                exterior[u, v, w] = True
                queue.append((u, v, w))
    return ~exterior


def unit_cube_mesh():
    """The axis-aligned unit cube as 8 vertices / 12 triangles."""
    verts = [(x, y, z) for z in (0.0, 1.0) for y in (0.0, 1.0) for x in (0.0, 1.0)]
    quads = [
        (0, 1, 3, 2), (4, 6, 7, 5),   # z = 0, z = 1
        (0, 4, 5, 1), (2, 3, 7, 6),   # y = 0, y = 1
        (0, 2, 6, 4), (1, 5, 7, 3),   # x = 0, x = 1
    ]
    tris = []
    for a, b, c, d in quads:
        tris += [(a, b, c), (a, c, d)]
    return verts, tris
