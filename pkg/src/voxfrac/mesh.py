"""Indexed triangle meshes (the carrier for OBJ/STL geometry)."""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError


class TriangleMesh:
    """Immutable vertex/triangle soup with validated indices."""

    __slots__ = ("vertices", "triangles")

    def __init__(self, vertices, triangles):
        verts = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
        tris = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        if tris.size:
            if tris.min() < 0 or tris.max() >= len(verts):
                raise InvalidArgumentError(
                    f"triangle index out of range (have {len(verts)} vertices)")
            degenerate = ((tris[:, 0] == tris[:, 1])
                          | (tris[:, 1] == tris[:, 2])
                          | (tris[:, 0] == tris[:, 2]))
            if degenerate.any():
                bad = int(np.argmax(degenerate))
                raise InvalidArgumentError(
                    f"triangle {bad} repeats a vertex index: {tuple(tris[bad])}")
        verts.flags.writeable = False
        tris.flags.writeable = False
        self.vertices = verts
        self.triangles = tris

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """(min, max) corners over all vertices referenced by triangles."""
        if not len(self.triangles):
            raise InvalidArgumentError("mesh has no triangles")
        used = self.vertices[self.triangles.reshape(-1)]
        return used.min(axis=0), used.max(axis=0)

    def is_closed_manifold(self) -> bool:
        """True iff every undirected edge is shared by exactly two triangles."""
        if not len(self.triangles):
            return False
        t = self.triangles
        edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        edges.sort(axis=1)
        _, counts = np.unique(edges, axis=0, return_counts=True)
        return bool((counts == 2).all())

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriangleMesh):
            return NotImplemented
        return (np.array_equal(self.vertices, other.vertices)
                and np.array_equal(self.triangles, other.triangles))

    def __repr__(self) -> str:
        return f"TriangleMesh(vertices={self.vertex_count}, triangles={self.triangle_count})"
