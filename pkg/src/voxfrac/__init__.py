"""Box-counting fractal analysis of voxelized solids.

Pipeline: generate or ingest a 3D model, voxelize it, count occupied
boxes across scales, and fit the log-log slope (the box-counting
dimension) or a size-frequency power law.
"""

from .census import CensusPoint, PowerLawFit, census_from_grid, fit_power_law
from .dimension import (DimensionFit, ScaleCount, box_count,
                        cube_count_dyadic, fit_dimension)
from .generator import (LevelEntry, LevelSequence, StackRaster, StackSpec,
                        level_sequence, rasterize_stack, ratio_check)
from .grid import VoxelGrid, make_grid
from .mesh import TriangleMesh
from .reference import gen_reference
from .voxelize import mesh_from_grid, solid_fill, voxelize_surface

__all__ = [
    "CensusPoint", "PowerLawFit", "census_from_grid", "fit_power_law",
    "DimensionFit", "ScaleCount", "box_count", "cube_count_dyadic",
    "fit_dimension",
    "LevelEntry", "LevelSequence", "StackRaster", "StackSpec",
    "level_sequence", "rasterize_stack", "ratio_check",
    "VoxelGrid", "make_grid", "TriangleMesh",
    "gen_reference",
    "mesh_from_grid", "solid_fill", "voxelize_surface",
]

__version__ = "0.1.0"
