"""Mesh-to-grid conversion (surface + solid) and grid-to-mesh extraction.

Surface voxelization uses the separating-axis triangle/box overlap test
(13 axes: 3 box normals, the triangle normal, 9 edge cross products) with
closed boxes plus a 1e-9-voxel conservative slack, so grazing contact
counts as occupied. Results are deterministic and independent of triangle
order.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import ndimage

from .errors import DegenerateGeometryError, InvalidArgumentError
from .grid import VoxelGrid
from .mesh import TriangleMesh

# 6-connectivity structuring element for the exterior flood fill.
_FACE_STRUCTURE = ndimage.generate_binary_structure(3, 1)


# Grazing slack, in voxel edges. Extreme mesh vertices sit exactly on cell
# boundaries by construction, so margin-zero contacts are structural; the
# slack keeps the hit/miss decision away from that knife edge (conservative:
# a cell within the slack of touching counts as touching).
GRAZE_TOLERANCE = 1e-9


def _mark_triangle(occ: np.ndarray, tri: np.ndarray, origin: np.ndarray,
                   voxel_size: float) -> None:
    """Set occ[x,y,z] for every cell whose closed box intersects `tri`."""
    half = voxel_size / 2.0
    tol = GRAZE_TOLERANCE * voxel_size
    lo_f = (tri.min(axis=0) - origin) / voxel_size
    hi_f = (tri.max(axis=0) - origin) / voxel_size
    # Candidate index window, padded one cell for float slack; SAT prunes it.
    lo = np.maximum(np.floor(lo_f).astype(int) - 1, 0)
    hi = np.minimum(np.floor(hi_f).astype(int) + 1, np.asarray(occ.shape) - 1)
    if (lo > hi).any():
        return

    cx = origin[0] + (np.arange(lo[0], hi[0] + 1) + 0.5) * voxel_size
    cy = origin[1] + (np.arange(lo[1], hi[1] + 1) + 0.5) * voxel_size
    cz = origin[2] + (np.arange(lo[2], hi[2] + 1) + 0.5) * voxel_size

    e = np.array([tri[1] - tri[0], tri[2] - tri[1], tri[0] - tri[2]])
    axes = [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]),
            np.array([0.0, 0.0, 1.0]), np.cross(e[0], e[1])]
    for unit in np.eye(3):
        for edge in e:
            axes.append(np.cross(unit, edge))

    mask = np.ones((len(cx), len(cy), len(cz)), dtype=bool)
    for axis in axes:
        rad = half * (abs(axis[0]) + abs(axis[1]) + abs(axis[2])) + tol
        proj = tri @ axis
        centers = (cx[:, None, None] * axis[0] + cy[None, :, None] * axis[1]
                   + cz[None, None, :] * axis[2])
        mask &= (centers >= proj.min() - rad) & (centers <= proj.max() + rad)
        if not mask.any():
            return
    occ[lo[0]:hi[0] + 1, lo[1]:hi[1] + 1, lo[2]:hi[2] + 1] |= mask


def voxelize_surface(mesh: TriangleMesh, resolution: int) -> VoxelGrid:
    """Voxelize a mesh surface onto a grid sized by its bounding box.

    The longest bounding-box axis spans `resolution` voxels; the grid is
    padded by one voxel on every side so exterior flood fill always has
    empty boundary cells available on non-degenerate inputs.
    """
    if mesh.triangle_count < 1:
        raise InvalidArgumentError("mesh has no triangles")
    if int(resolution) != resolution or resolution < 2:
        raise InvalidArgumentError(f"resolution must be an integer >= 2, got {resolution}")
    lo, hi = mesh.bounds()
    extent = hi - lo
    longest = float(extent.max())
    if longest <= 0.0:
        raise DegenerateGeometryError("mesh bounding box has zero extent on every axis")

    voxel_size = longest / resolution
    # ceil with slack so longest/voxel_size == resolution despite rounding
    spans = [max(0, math.ceil(float(ext) / voxel_size - 1e-9)) for ext in extent]
    dims = tuple(n + 2 for n in spans)
    origin = lo - voxel_size

    occ = np.zeros(dims, dtype=np.bool_)
    for tri_idx in mesh.triangles:
        _mark_triangle(occ, mesh.vertices[tri_idx], origin, voxel_size)
    return VoxelGrid(occ, voxel_size, (origin[0], origin[1], origin[2]))


def solid_fill(surface: VoxelGrid) -> VoxelGrid:
    """Fill every cavity not 6-connected to the grid boundary.

    Occupied cells are never cleared; the result is idempotent under
    repeated application. A grid whose boundary is fully occupied fills
    completely (there is no reachable exterior).
    """
    occ = surface.occupancy
    labels, n = ndimage.label(~occ, structure=_FACE_STRUCTURE)
    if n == 0:
        return VoxelGrid(occ.copy(), surface.voxel_size, surface.origin)
    boundary = np.zeros(n + 1, dtype=bool)
    for face in (labels[0], labels[-1], labels[:, 0], labels[:, -1],
                 labels[:, :, 0], labels[:, :, -1]):
        boundary[np.unique(face)] = True
    boundary[0] = False
    exterior = boundary[labels]
    return VoxelGrid(~exterior, surface.voxel_size, surface.origin)


# Outward-facing corner offsets per face direction, wound counterclockwise
# as seen from outside the cell.
_FACE_CORNERS = {
    (1, 0, 0): ((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)),
    (-1, 0, 0): ((0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)),
    (0, 1, 0): ((0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)),
    (0, -1, 0): ((0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)),
    (0, 0, 1): ((0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)),
    (0, 0, -1): ((0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)),
}


def mesh_from_grid(grid: VoxelGrid) -> TriangleMesh:
    """Extract the boundary faces of the occupied set as a triangle mesh.

    Emits two triangles per exposed cell face, with vertices in model
    units and deterministic ordering (fixed face-direction order, cells
    in C scan order).
    """
    occ = grid.occupancy
    padded = np.pad(occ, 1, constant_values=False)
    vert_ids: dict[tuple[int, int, int], int] = {}
    verts: list[tuple[float, float, float]] = []
    tris: list[tuple[int, int, int]] = []

    def vid(corner: tuple[int, int, int]) -> int:
        idx = vert_ids.get(corner)
        if idx is None:
            idx = len(verts)
            vert_ids[corner] = idx
            verts.append(grid.cell_min_corner(*corner))
        return idx

    for direction, corners in _FACE_CORNERS.items():
        dx, dy, dz = direction
        shifted = np.roll(padded, (-dx, -dy, -dz), axis=(0, 1, 2))[1:-1, 1:-1, 1:-1]
        exposed = occ & ~shifted
        for x, y, z in np.argwhere(exposed):
            ids = [vid((int(x) + cx, int(y) + cy, int(z) + cz)) for cx, cy, cz in corners]
            tris.append((ids[0], ids[1], ids[2]))
            tris.append((ids[0], ids[2], ids[3]))
    if not tris:
        raise InvalidArgumentError("grid has no occupied cells")
    return TriangleMesh(verts, tris)
