"""Command-line pipeline: generate, voxelize, count, fit, report.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 numeric
failure (insufficient data). Diagnostics go to stderr; artifacts and
tables are deterministic (same inputs and flags give identical bytes).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .census import fit_power_law
from .dimension import cube_count_dyadic, fit_dimension
from .errors import (DegenerateGeometryError, EmptyGridError, FormatError,
                     InsufficientDataError, InvalidArgumentError)
from .formats import (parse_obj, parse_stl, read_census_csv, read_voxel,
                      write_obj, write_report, write_scale_csv, write_voxel)
from .generator import StackSpec, level_sequence, rasterize_stack, ratio_check
from .grid import VoxelGrid
from .reference import gen_reference
from .voxelize import mesh_from_grid, solid_fill, voxelize_surface

USAGE_ERROR = 1
DATA_ERROR = 2
NUMERIC_ERROR = 3


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors with status 2; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="voxfrac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="generate a stacked solid")
    gen.add_argument("--shape", required=True, choices=("square", "circle", "sphere"))
    gen.add_argument("--x0", required=True, type=float, help="level-0 width (model units)")
    gen.add_argument("--y0", required=True, type=float, help="level-0 height (model units)")
    gen.add_argument("--rh", type=float, default=2.0 / 3.0, help="width factor per level")
    gen.add_argument("--rv", type=float, default=1.5, help="height factor per level")
    gen.add_argument("--levels", required=True, type=int)
    gen.add_argument("--resolution", required=True, type=int,
                     help="voxels spanning the level-0 width")
    gen.add_argument("--out", required=True, help="output path (.obj or .voxl)")
    gen.set_defaults(func=_cmd_generate)

    dim = sub.add_parser("dimension", help="box-counting dimension of a model")
    dim.add_argument("--in", dest="input", required=True,
                     help="input path (.obj, .stl or .voxl)")
    dim.add_argument("--resolution", type=int,
                     help="voxelization resolution (required for mesh inputs)")
    dim.add_argument("--solid", action="store_true", help="fill enclosed cavities")
    dim.add_argument("--discard-low", type=int, default=0, help="drop N finest scales")
    dim.add_argument("--discard-high", type=int, default=0, help="drop N coarsest scales")
    dim.add_argument("--report", required=True, help="output JSON path")
    dim.add_argument("--csv", help="optional scale-count CSV path")
    dim.set_defaults(func=_cmd_dimension)

    cen = sub.add_parser("census", help="power-law fit of a size,count census")
    cen.add_argument("--in", dest="input", required=True, help="census CSV path")
    cen.add_argument("--report", required=True, help="output JSON path")
    cen.set_defaults(func=_cmd_census)

    ref = sub.add_parser("reference", help="write a known-dimension reference solid")
    ref.add_argument("--kind", required=True, choices=("menger", "cube", "slab"))
    ref.add_argument("--size", required=True, type=int,
                     help="menger depth, or cube/slab edge in voxels")
    ref.add_argument("--out", required=True, help="output path (.voxl)")
    ref.set_defaults(func=_cmd_reference)

    return parser


def _write_grid_artifact(grid: VoxelGrid, out: str) -> int:
    path = Path(out)
    if path.suffix == ".voxl":
        path.write_bytes(write_voxel(grid))
    elif path.suffix == ".obj":
        path.write_bytes(write_obj(mesh_from_grid(grid)))
    else:
        print(f"voxfrac: error: unsupported output extension {path.suffix!r}",
              file=sys.stderr)
        return USAGE_ERROR
    return 0


def _cmd_generate(args) -> int:
    spec = StackSpec(base_shape=args.shape, x0=args.x0, y0=args.y0,
                     levels=args.levels, r_h=args.rh, r_v=args.rv)
    seq = level_sequence(spec)
    raster = rasterize_stack(spec, args.resolution)

    print("level,width,height")
    for e in seq.entries:
        print(f"{e.level},{e.width!r},{e.height!r}")
    if len(seq.entries) >= 3:
        print(f"ratio_deviation_vs_9_6_4: {ratio_check(seq)!r}")
    if raster.truncated_at is not None:
        print(f"truncated_at_level: {raster.truncated_at}")
    return _write_grid_artifact(raster.grid, args.out)


def _load_grid(args) -> VoxelGrid:
    path = Path(args.input)
    suffix = path.suffix.lower()
    if suffix == ".voxl":
        return read_voxel(path.read_bytes())
    if suffix in (".obj", ".stl"):
        if args.resolution is None:
            print("voxfrac: error: mesh inputs require --resolution", file=sys.stderr)
            raise SystemExit(USAGE_ERROR)
        data = path.read_bytes()
        mesh = parse_obj(data) if suffix == ".obj" else parse_stl(data)
        if not mesh.is_closed_manifold():
            print("voxfrac: warning: mesh is not a closed manifold; "
                  "solid fill only closes cavities sealed at this resolution",
                  file=sys.stderr)
        return voxelize_surface(mesh, args.resolution)
    print(f"voxfrac: error: unsupported input extension {path.suffix!r}",
          file=sys.stderr)
    raise SystemExit(USAGE_ERROR)


def _cmd_dimension(args) -> int:
    grid = _load_grid(args)
    if args.solid:
        grid = solid_fill(grid)
    scales = cube_count_dyadic(grid)
    fit = fit_dimension(scales, discard_low=args.discard_low,
                        discard_high=args.discard_high)
    Path(args.report).write_bytes(write_report(fit))
    if args.csv:
        Path(args.csv).write_bytes(write_scale_csv(scales))
    print(f"dimension: {fit.dimension!r}")
    print(f"r_squared: {fit.r_squared!r}")
    return 0


def _cmd_census(args) -> int:
    points = read_census_csv(Path(args.input).read_bytes())
    fit = fit_power_law(points)
    Path(args.report).write_bytes(write_report(fit))
    print(f"delta: {fit.delta!r}")
    print(f"r_squared: {fit.r_squared!r}")
    return 0


def _cmd_reference(args) -> int:
    grid = gen_reference(args.kind, args.size)
    path = Path(args.out)
    path.write_bytes(write_voxel(grid))
    print(f"occupied: {grid.occupied_count}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except FormatError as exc:
        print(f"voxfrac: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except (EmptyGridError, InsufficientDataError) as exc:
        print(f"voxfrac: error: {exc}", file=sys.stderr)
        return NUMERIC_ERROR
    except DegenerateGeometryError as exc:
        print(f"voxfrac: error: {exc}", file=sys.stderr)
        return DATA_ERROR
    except InvalidArgumentError as exc:
        print(f"voxfrac: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"voxfrac: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
