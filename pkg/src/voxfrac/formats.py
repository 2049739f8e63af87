"""Byte-stream parsers and writers: OBJ, STL, voxel container, CSV, JSON.

The voxel container is bit-exact by construction: 52-byte little-endian
header (magic "VOXL", version, dims, voxel size, origin) followed by the
occupancy bitmap in x-fastest cell order, little-endian bit order within
each byte, trailing bits zero. Writing then reading (and reading then
writing) are identities.
"""
from __future__ import annotations

import json
import math
import struct

import numpy as np

from .census import CensusPoint, PowerLawFit
from .dimension import DimensionFit
from .errors import (CensusCsvError, EmptyMeshError, InvalidArgumentError,
                     ObjParseError, StlParseError, TruncatedFileError,
                     VoxelFormatError)
from .grid import VoxelGrid
from .mesh import TriangleMesh

VOXEL_MAGIC = b"VOXL"
VOXEL_VERSION = 1
_HEADER = struct.Struct("<4sI3Id3d")  # magic, version, dims, voxel_size, origin


# ---------------------------------------------------------------- OBJ ----

def _parse_float(token: str, what: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ObjParseError(f"bad {what} {token!r}", line_no) from None
    if not math.isfinite(value):
        raise ObjParseError(f"non-finite {what} {token!r}", line_no)
    return value


def parse_obj(data: bytes | str) -> TriangleMesh:
    """Parse the geometry subset of OBJ: `v` and `f` records.

    Faces with more than three vertices are fan-triangulated around the
    first vertex; negative indices resolve against the vertices defined so
    far; texture/normal/material records are ignored.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ObjParseError(f"not valid UTF-8 text ({exc.reason})", 0) from None
    else:
        text = data

    vertices: list[tuple[float, float, float]] = []
    triangles: list[tuple[int, int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        record = tokens[0]
        if record == "v":
            if len(tokens) < 4:
                raise ObjParseError("vertex record needs 3 coordinates", line_no)
            vertices.append(tuple(_parse_float(t, "coordinate", line_no)
                                  for t in tokens[1:4]))
        elif record == "f":
            if len(tokens) < 4:
                raise ObjParseError("face record needs at least 3 vertices", line_no)
            idx = []
            for token in tokens[1:]:
                ref = token.split("/")[0]
                try:
                    i = int(ref)
                except ValueError:
                    raise ObjParseError(f"bad vertex reference {token!r}", line_no) from None
                if i == 0:
                    raise ObjParseError("vertex index 0 is not allowed", line_no)
                resolved = len(vertices) + i if i < 0 else i - 1
                if not (0 <= resolved < len(vertices)):
                    raise ObjParseError(
                        f"vertex index {i} out of range (have {len(vertices)})", line_no)
                idx.append(resolved)
            for k in range(1, len(idx) - 1):
                tri = (idx[0], idx[k], idx[k + 1])
                if len(set(tri)) != 3:
                    raise ObjParseError(f"degenerate face {tuple(tokens[1:])}", line_no)
                triangles.append(tri)
        # all other records (vt, vn, usemtl, o, g, s, ...) are ignored
    if not triangles:
        raise EmptyMeshError("OBJ stream defines no faces")
    return TriangleMesh(vertices, triangles)


def write_obj(mesh: TriangleMesh) -> bytes:
    lines = [f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}"
             for v in mesh.vertices]
    lines += [f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}" for t in mesh.triangles]
    return ("\n".join(lines) + "\n").encode("ascii")


# ---------------------------------------------------------------- STL ----

def _parse_stl_ascii(text: str) -> TriangleMesh:
    vertices: list[tuple[float, float, float]] = []
    allowed = {"solid", "endsolid", "facet", "endfacet", "outer", "endloop"}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].lower()
        if keyword == "vertex":
            if len(tokens) != 4:
                raise StlParseError(f"line {line_no}: vertex needs 3 coordinates")
            try:
                coords = tuple(float(t) for t in tokens[1:4])
            except ValueError:
                raise StlParseError(f"line {line_no}: bad vertex coordinate") from None
            if not all(math.isfinite(c) for c in coords):
                raise StlParseError(f"line {line_no}: non-finite vertex coordinate")
            vertices.append(coords)
        elif keyword not in allowed:
            raise StlParseError(f"line {line_no}: unexpected token {tokens[0]!r}")
    if len(vertices) % 3 != 0:
        raise StlParseError(f"vertex count {len(vertices)} is not a multiple of 3")
    if not vertices:
        raise EmptyMeshError("ASCII STL defines no facets")
    triangles = [(i, i + 1, i + 2) for i in range(0, len(vertices), 3)]
    return TriangleMesh(vertices, triangles)


def _parse_stl_binary(data: bytes) -> TriangleMesh:
    if len(data) < 84:
        raise TruncatedFileError(
            f"binary STL needs an 84-byte prelude, got {len(data)} bytes")
    (count,) = struct.unpack_from("<I", data, 80)
    expected = 84 + 50 * count
    if len(data) != expected:
        raise TruncatedFileError(
            f"binary STL with {count} triangles must be {expected} bytes, got {len(data)}")
    if count == 0:
        raise EmptyMeshError("binary STL defines no triangles")
    records = np.frombuffer(data, dtype=np.uint8, offset=84).reshape(count, 50)
    floats = records[:, :48].copy().view("<f4").reshape(count, 4, 3).astype(np.float64)
    verts = floats[:, 1:, :].reshape(count * 3, 3)  # skip the normal triple
    if not np.isfinite(verts).all():
        raise StlParseError("binary STL contains non-finite vertex coordinates")
    triangles = np.arange(count * 3, dtype=np.int64).reshape(count, 3)
    return TriangleMesh(verts, triangles)


def parse_stl(data: bytes) -> TriangleMesh:
    """Parse binary or ASCII STL; ASCII is detected by a leading "solid"
    that also parses cleanly, with binary as the fallback."""
    if data.lstrip()[:5] == b"solid":
        try:
            return _parse_stl_ascii(data.decode("utf-8", errors="strict"))
        except (StlParseError, UnicodeDecodeError):
            pass
    return _parse_stl_binary(data)


# ------------------------------------------------------- voxel container ----

def write_voxel(grid: VoxelGrid) -> bytes:
    nx, ny, nz = grid.dims
    header = _HEADER.pack(VOXEL_MAGIC, VOXEL_VERSION, nx, ny, nz,
                          grid.voxel_size, *grid.origin)
    bits = grid.occupancy.ravel(order="F")  # x fastest, then y, then z
    payload = np.packbits(bits, bitorder="little").tobytes()
    return header + payload


def read_voxel(data: bytes) -> VoxelGrid:
    if len(data) < _HEADER.size:
        raise VoxelFormatError(
            f"voxel file needs a {_HEADER.size}-byte header, got {len(data)} bytes")
    magic, version, nx, ny, nz, voxel_size, ox, oy, oz = _HEADER.unpack_from(data)
    if magic != VOXEL_MAGIC:
        raise VoxelFormatError(f"bad magic {magic!r}")
    if version != VOXEL_VERSION:
        raise VoxelFormatError(f"unsupported version {version}")
    if min(nx, ny, nz) < 1:
        raise VoxelFormatError(f"dims must all be >= 1, got {(nx, ny, nz)}")
    if not (voxel_size > 0 and math.isfinite(voxel_size)):
        raise VoxelFormatError(f"voxel_size must be positive and finite, got {voxel_size}")
    cells = nx * ny * nz
    payload = data[_HEADER.size:]
    if len(payload) != (cells + 7) // 8:
        raise VoxelFormatError(
            f"dims {(nx, ny, nz)} need {(cells + 7) // 8} payload bytes, got {len(payload)}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), bitorder="little")
    if bits[cells:].any():
        raise VoxelFormatError("trailing bits in the final payload byte must be zero")
    occ = bits[:cells].astype(np.bool_).reshape((nx, ny, nz), order="F")
    return VoxelGrid(np.ascontiguousarray(occ), voxel_size, (ox, oy, oz))


# ------------------------------------------------------------- reports ----

def write_report(fit: DimensionFit | PowerLawFit) -> bytes:
    """Serialize a fit as JSON (deterministic: sorted keys, no timestamps)."""
    if isinstance(fit, DimensionFit):
        doc = {
            "dimension": fit.dimension,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "scales_used": [{"box_side": sc.box_side, "epsilon": sc.epsilon,
                             "count": sc.count} for sc in fit.scales_used],
            "residuals": list(fit.residuals),
        }
    elif isinstance(fit, PowerLawFit):
        doc = {
            "delta": fit.delta,
            "intercept": fit.log_prefactor,
            "r_squared": fit.r_squared,
        }
    else:
        raise InvalidArgumentError(f"cannot report {type(fit).__name__}")
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def write_scale_csv(scales) -> bytes:
    lines = ["box_side,epsilon,count"]
    lines += [f"{sc.box_side},{sc.epsilon!r},{sc.count}" for sc in scales]
    return ("\n".join(lines) + "\n").encode("ascii")


def read_census_csv(data: bytes | str) -> list[CensusPoint]:
    """Read `size,count` rows; `#` lines are comments, header mandatory."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CensusCsvError(f"not valid UTF-8 text ({exc.reason})", 0) from None
    else:
        text = data

    points: list[CensusPoint] = []
    saw_header = False
    for row_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_header:
            normalized = "".join(line.split()).lower()
            if normalized != "size,count":
                raise CensusCsvError("expected header 'size,count'", row_no)
            saw_header = True
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise CensusCsvError(f"expected 2 fields, got {len(fields)}", row_no)
        try:
            size, count = float(fields[0]), float(fields[1])
        except ValueError:
            raise CensusCsvError(f"non-numeric value in {fields}", row_no) from None
        if not (math.isfinite(size) and math.isfinite(count)):
            raise CensusCsvError("size and count must be finite", row_no)
        if size <= 0 or count <= 0:
            raise CensusCsvError(f"size and count must be > 0, got {size},{count}", row_no)
        points.append(CensusPoint(size=size, count=count))
    if not saw_header:
        raise CensusCsvError("missing header 'size,count'", 0)
    return points
