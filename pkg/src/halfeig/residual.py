"""Boundary residuals of the scaled profile and the phase roots at x = -1.

A candidate ``w(s, delta)`` satisfies the multi-point condition at an end
point ``eta0`` when

    gamma(s, delta) = w(eta0) - sum_i alpha_i w(eta_i) = 0.

For coefficient vectors in the nonnegative cone this has exactly two
simple roots in ``delta`` on the circle of length ``period``; these are
labelled by the sign of ``w'`` at the end point.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidProblem, RootCountMismatch
from .jumping_profile import psi_eval, w_eval, wrap_phase

__all__ = [
    "ConeStatus",
    "ProblemSpec",
    "DeltaRoots",
    "dirichlet",
    "gamma",
    "gamma_pm",
    "phase_roots",
    "delta_roots",
    "b_value",
]


class ConeStatus(enum.Enum):
    INSIDE_A_PLUS = "inside_a_plus"
    INSIDE_A_ONLY = "inside_a_only"
    OUTSIDE = "outside"


def _cone_status(alpha_minus, alpha_plus):
    sides = (alpha_minus, alpha_plus)
    if any(sum(abs(x) for x in side) >= 1.0 for side in sides):
        return ConeStatus.OUTSIDE
    if any(x < 0.0 for side in sides for x in side):
        return ConeStatus.INSIDE_A_ONLY
    return ConeStatus.INSIDE_A_PLUS


@dataclass(frozen=True)
class ProblemSpec:
    """Multi-point boundary data ``u(+-1) = sum alpha^+-_i u(eta^+-_i)``.

    Empty coefficient lists are replaced by a single zero coefficient at
    node 0, which is the plain Dirichlet condition.  Specs outside the
    nonnegative cone are rejected unless ``allow_outside_cone`` is set.
    """

    alpha_minus: Tuple[float, ...]
    eta_minus: Tuple[float, ...]
    alpha_plus: Tuple[float, ...]
    eta_plus: Tuple[float, ...]
    allow_outside_cone: bool = False
    cone_status: ConeStatus = field(init=False)

    def __post_init__(self):
        sides = {}
        for side in ("minus", "plus"):
            alpha = tuple(float(v) for v in getattr(self, "alpha_" + side))
            eta = tuple(float(v) for v in getattr(self, "eta_" + side))
            if len(alpha) != len(eta):
                raise InvalidProblem(
                    f"alpha_{side} and eta_{side} differ in length "
                    f"({len(alpha)} vs {len(eta)})")
            if not alpha:
                alpha, eta = (0.0,), (0.0,)
            for v in alpha + eta:
                if not math.isfinite(v):
                    raise InvalidProblem(f"non-finite entry in {side} data")
            for e in eta:
                if not -1.0 < e < 1.0:
                    raise InvalidProblem(f"eta_{side} entry {e} not in (-1, 1)")
            sides[side] = (alpha, eta)
        object.__setattr__(self, "alpha_minus", sides["minus"][0])
        object.__setattr__(self, "eta_minus", sides["minus"][1])
        object.__setattr__(self, "alpha_plus", sides["plus"][0])
        object.__setattr__(self, "eta_plus", sides["plus"][1])
        status = _cone_status(self.alpha_minus, self.alpha_plus)
        object.__setattr__(self, "cone_status", status)
        if status is not ConeStatus.INSIDE_A_PLUS and not self.allow_outside_cone:
            raise InvalidProblem(
                f"coefficients are {status.value}; need alpha >= 0 and "
                "sum(alpha) < 1 on each side (set allow_outside_cone to override)")

    def side(self, sign):
        """``(eta0, eta, alpha)`` for the end point ``sign`` (+1 or -1)."""
        if sign > 0:
            return 1.0, self.eta_plus, self.alpha_plus
        return -1.0, self.eta_minus, self.alpha_minus

    @property
    def active_nodes(self):
        """Interior nodes carrying a nonzero coefficient."""
        return tuple(e for a, e in zip(self.alpha_minus + self.alpha_plus,
                                       self.eta_minus + self.eta_plus) if a != 0.0)

    def to_dict(self):
        return {
            "alpha_minus": list(self.alpha_minus),
            "eta_minus": list(self.eta_minus),
            "alpha_plus": list(self.alpha_plus),
            "eta_plus": list(self.eta_plus),
            "allow_outside_cone": self.allow_outside_cone,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                alpha_minus=tuple(data.get("alpha_minus", ())),
                eta_minus=tuple(data.get("eta_minus", ())),
                alpha_plus=tuple(data.get("alpha_plus", ())),
                eta_plus=tuple(data.get("eta_plus", ())),
                allow_outside_cone=bool(data.get("allow_outside_cone", False)),
            )
        except TypeError as exc:
            raise InvalidProblem(str(exc)) from exc


def dirichlet():
    return ProblemSpec((), (), (), ())


@dataclass(frozen=True)
class DeltaRoots:
    delta_plus: float
    delta_minus: float
    s: float


def gamma(p, s, delta, eta0, eta, alpha):
    """``w(eta0) - sum_i alpha_i w(eta_i)`` for ``w = w(s, delta)``."""
    psi = p.psi_value
    total = psi(s * eta0 - delta)
    for a_i, e_i in zip(alpha, eta):
        if a_i != 0.0:
            total -= a_i * psi(s * e_i - delta)
    return total


def gamma_pm(p, s, delta, spec, side):
    """Residual of the boundary condition at ``+1`` (side > 0) or ``-1``."""
    eta0, eta, alpha = spec.side(side)
    return gamma(p, s, delta, eta0, eta, alpha)


GRID_OFFSET = 0.5 * (3.0 - math.sqrt(5.0))


def _gamma_on_circle(p, s, deltas, eta0, eta, alpha):
    # vectorised gamma over an array of phases
    vals, _ = psi_eval(p, s * eta0 - deltas)
    for a_i, e_i in zip(alpha, eta):
        if a_i != 0.0:
            vals = vals - a_i * psi_eval(p, s * e_i - deltas)[0]
    return vals


def phase_roots(p, s, eta0, eta, alpha, n_samples=64, max_samples=4096):
    """All roots in ``[0, period)`` of ``delta -> gamma(s, delta)``.

    The circle is sampled at ``n_samples`` points (doubled while the count
    of sign changes is odd or below two) and every bracket is polished by a
    bracketing solver to ``1e-13 * period``.
    """
    per = p.period
    xtol = 1e-13 * per
    n = n_samples
    while True:
        # offset keeps structured phases (such as half a period) off the nodes
        grid = (np.arange(n) + GRID_OFFSET) * (per / n)
        vals = _gamma_on_circle(p, s, grid, eta0, eta, alpha)
        pos = vals >= 0.0
        change = np.flatnonzero(pos != np.roll(pos, -1))
        count = len(change)
        if (count >= 2 and count % 2 == 0) or n >= max_samples:
            break
        n *= 2

    def g(d):
        return gamma(p, s, d, eta0, eta, alpha)

    roots = []
    for j in change:
        lo = grid[j]
        hi = grid[j + 1] if j + 1 < n else grid[0] + per
        f_lo = g(lo)
        f_hi = g(hi)
        if f_lo == 0.0:
            r = lo
        elif f_hi == 0.0:
            r = hi
        elif (f_lo > 0) == (f_hi > 0):
            # vector/scalar rounding disagreement on a near-zero sample
            r = lo if abs(f_lo) < abs(f_hi) else hi
        else:
            r = brentq(g, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)
        roots.append(wrap_phase(r, per))
    return roots


def delta_roots(p, s, spec, n_samples=64):
    """The two phases at which ``w(s, delta)`` meets the condition at -1.

    Returns
    -------
    DeltaRoots
        ``delta_plus`` has ``w'(-1) > 0``, ``delta_minus`` has ``w'(-1) < 0``.

    Raises
    ------
    RootCountMismatch
        When the number of roots is not two or the slopes do not carry
        opposite signs.  This happens for coefficients outside the cone.
    """
    eta0, eta, alpha = spec.side(-1)
    roots = phase_roots(p, s, eta0, eta, alpha, n_samples=n_samples)
    if len(roots) != 2:
        raise RootCountMismatch(len(roots), s)
    slopes = [w_eval(p, s, d, eta0)[1] for d in roots]
    if slopes[0] > 0 and slopes[1] < 0:
        return DeltaRoots(roots[0], roots[1], s)
    if slopes[0] < 0 and slopes[1] > 0:
        return DeltaRoots(roots[1], roots[0], s)
    raise RootCountMismatch(len(roots), s, "end-point slopes share a sign")


def b_value(p, s, spec, roots=None):
    """Product of the residuals at +1 along the two phase roots at -1.

    Negative between nodal classes, positive strictly inside a split pair
    of half-eigenvalues, zero exactly at half-eigenvalues ``s**2``.
    """
    if roots is None:
        roots = delta_roots(p, s, spec)
    return (gamma_pm(p, s, roots.delta_minus, spec, 1)
            * gamma_pm(p, s, roots.delta_plus, spec, 1))
