"""Half-eigenvalues, Fucik curves and solvability for the one-dimensional
jumping problem ``-u'' = lam (a u^+ - b u^-)`` with multi-point boundary
conditions, plus shooting solvers for forced and nonlinear variants."""

from .errors import (BlowUp, BoundaryCriticalPoint, BranchLost, BranchMismatch,
                     ConditionFails, HalfEigError, IncompleteSpectrum,
                     InvalidProblem, NonPositiveGamma, NotSplitInterval,
                     RootCountMismatch)
from .fucik import FucikSample, default_theta_grid, diagonal_crossing, trace_curve
from .jumping_profile import (JumpingProfile, make_profile, nodal_class,
                              profile_from_ab, psi_eval, w_eval)
from .residual import ConeStatus, ProblemSpec, b_value, delta_roots, dirichlet, gamma
from .solvability import (ForcingFunction, LambdaClassification, classify_lambda,
                          nonsolvable_forcing)
from .spectrum import (HalfEigenvalue, eigenfunction_samples, find_record,
                       half_eigenvalues, linear_eigenvalues, scan_branch_roots)

__version__ = "0.1.0"
