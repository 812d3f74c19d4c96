"""Shooting solvers for the inhomogeneous and nonlinear multi-point problems."""

from .families import (NonlinearityDescriptor, SampledForcing, atan_shift,
                       constant_forcing, linear, parse_forcing,
                       parse_nonlinearity, rational_bump)
from .branch import BranchPoint, continue_branch, find_nodal, nodal_condition
from .integrator import Trajectory, integrate, integrate_many, make_grid
from .shooting import (ShootingState, boundary_residuals, deduplicate, lattice,
                       newton_shoot, shooting_state, solve_halflinear,
                       solve_nonlinear)

__all__ = [
    "BranchPoint", "continue_branch", "find_nodal", "nodal_condition",
    "NonlinearityDescriptor", "SampledForcing", "atan_shift", "constant_forcing",
    "linear", "parse_forcing", "parse_nonlinearity", "rational_bump",
    "Trajectory", "integrate", "integrate_many", "make_grid",
    "ShootingState", "boundary_residuals", "deduplicate", "lattice",
    "newton_shoot", "shooting_state", "solve_halflinear", "solve_nonlinear",
]
