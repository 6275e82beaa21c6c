"""Doubly connected rotating vortex patches of the planar Euler equations.

Computes m-fold symmetric V-states bifurcating from the annular patch
b < |z| < 1: predicted bifurcation angular velocities from the
dispersion relation, nonlinear states by a Fourier-Newton method with
trapezoidal contour quadrature, and branch continuation in the angular
velocity.
"""

from .continuation import (
    Branch,
    BranchRecord,
    EmptyBranch,
    distance_profile,
    minimum_distance,
    sweep,
)
from .contour import (
    FoldReducedContour,
    InvalidContour,
    SampledContour,
    VortexContourCoeffs,
    boundary_distance,
    fold_reduce,
    perturbed_annulus,
    reconstruct,
    sample,
)
from .dispersion import (
    DispersionPoint,
    Infeasible,
    critical_radius,
    delta,
    double_eigenvalue_locus,
    double_eigenvalue_radius,
    eigenvalues_for_fold,
    feasibility,
    frequency_matrix,
    kernel_vector,
)
from .quadrature import kernel_integral, vstate_residual_pointwise
from .residual import DiscreteResidual, assemble
from .solver import (
    GeometryBreakdown,
    SingularJacobian,
    SolveReport,
    SolverConfig,
    default_modes,
    fd_jacobian,
    newton_solve,
)
from .state_io import (
    BranchFile,
    StateFile,
    load_branch,
    load_state,
    save_branch,
    save_state,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BranchFile",
    "BranchRecord",
    "DiscreteResidual",
    "DispersionPoint",
    "EmptyBranch",
    "FoldReducedContour",
    "GeometryBreakdown",
    "Infeasible",
    "InvalidContour",
    "SampledContour",
    "SingularJacobian",
    "SolveReport",
    "SolverConfig",
    "StateFile",
    "VortexContourCoeffs",
    "assemble",
    "boundary_distance",
    "critical_radius",
    "default_modes",
    "delta",
    "distance_profile",
    "double_eigenvalue_locus",
    "double_eigenvalue_radius",
    "eigenvalues_for_fold",
    "fd_jacobian",
    "feasibility",
    "fold_reduce",
    "frequency_matrix",
    "kernel_integral",
    "kernel_vector",
    "load_branch",
    "load_state",
    "minimum_distance",
    "newton_solve",
    "perturbed_annulus",
    "reconstruct",
    "sample",
    "save_branch",
    "save_state",
    "sweep",
    "vstate_residual_pointwise",
    "__version__",
]
