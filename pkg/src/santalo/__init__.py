"""Santaló points and dual-volume functions of polytope fibers."""

__version__ = "0.1.0"

from .chamber import Cell, cell_of, enumerate_cells, same_cell
from .continuation import (
    ParametricSystem,
    SolutionSet,
    TrackerOptions,
    homotopy_to_one,
    ml_degree,
    monodromy_solve,
    numerical_patch_degree,
    santalo_point_homotopy,
    seed_start_pair,
    track_santalo_path,
)
from .dual_volume import (
    DualVolume,
    WachspressModel,
    adjoint_x,
    adjoint_y,
    dual_volume_fn,
    dual_volume_oracle_2d,
    dual_volume_y,
    eval_log_V,
    santalo_region_membership,
    wachspress_coords,
)
from .errors import InvalidInputError, NonSimpleError, NumericalError, SantaloError, WallError
from .exact import ExactMatrix, kernel_basis, parse_rational, parse_vector
from .newton import SantaloResult, patch_residual, santalo_point, santalo_point_hrep
from .poly import SparsePoly
from .polytope import FiberProblem, HRep, hrep_to_fiber, project_Q

__all__ = [
    "Cell", "DualVolume", "ExactMatrix", "FiberProblem", "HRep", "InvalidInputError",
    "NonSimpleError", "NumericalError", "ParametricSystem", "SantaloError", "SantaloResult",
    "SolutionSet", "SparsePoly", "TrackerOptions", "WachspressModel", "WallError",
    "adjoint_x", "adjoint_y", "cell_of", "dual_volume_fn", "dual_volume_oracle_2d",
    "dual_volume_y", "enumerate_cells", "eval_log_V", "homotopy_to_one", "hrep_to_fiber",
    "kernel_basis", "ml_degree", "monodromy_solve", "numerical_patch_degree", "parse_rational",
    "parse_vector", "patch_residual", "project_Q", "same_cell", "santalo_point",
    "santalo_point_homotopy", "santalo_point_hrep", "santalo_region_membership",
    "seed_start_pair", "track_santalo_path", "wachspress_coords",
]
