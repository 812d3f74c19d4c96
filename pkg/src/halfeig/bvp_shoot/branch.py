"""Continuation of the nontrivial branch of ``-u'' = lam f(u)`` bifurcating
from ``(lambda_k / f0, 0)``, and nodal solutions of ``-u'' = f(u)`` where
that branch crosses ``lam = 1``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import BranchLost, ConditionFails
from ..jumping_profile import make_profile, w_eval
from ..spectrum import find_record, half_eigenvalues
from .integrator import Trajectory, integrate_many
from .shooting import DEFAULT_STEP, _batch_residuals, spec_nodes

__all__ = ["BranchPoint", "continue_branch", "find_nodal", "nodal_condition"]

START_AMPLITUDE = 1e-3
AMPLITUDE_CAP = 1e6


@dataclass(frozen=True)
class BranchPoint:
    lam: float
    amplitude: float
    c: float
    d: float


class _BranchProblem:
    """Residuals of ``-u'' = lam f(u)`` in the unknowns ``X = (lam, c, d)``."""

    def __init__(self, spec, nl, step):
        self.spec = spec
        self.step = step
        self.nodes = spec_nodes(spec)
        f = nl.f
        self.rhs = lambda x, u, lam: lam * f(u)

    def evaluate(self, X):
        X = np.atleast_2d(X)
        grid, U, V = integrate_many(self.rhs, X[:, 1], X[:, 2], self.step,
                                    self.nodes, args=(X[:, 0],))
        return grid, U, V, _batch_residuals(self.spec, grid, U, V)

    def correct(self, X_pred, normal, max_iter=12, rtol=1e-10):
        """Newton on ``R(X) = 0``, ``normal . (X - X_pred) = 0``.

        Returns ``(X, trajectory, iterations)`` or ``None`` on failure.
        """
        X = np.array(X_pred, dtype=float)
        normal = np.asarray(normal, dtype=float)
        for it in range(1, max_iter + 1):
            eps = 1e-7 * (1.0 + np.abs(X))
            batch = np.tile(X, (4, 1))
            batch[1:, :] += np.diag(eps)
            grid, U, V, R = self.evaluate(batch)
            if not np.all(np.isfinite(R)):
                return None
            r0 = R[0]
            amp = float(np.max(np.abs(U[0])))
            g = float(normal @ (X - X_pred))
            if max(abs(r0[0]), abs(r0[1])) <= rtol * (1.0 + amp) and abs(g) <= 1e-12 * (1 + np.abs(X).max()):
                return X, Trajectory(grid, U[0].copy(), V[0].copy()), it
            J = np.empty((3, 3))
            J[:2, :] = ((R[1:] - r0) / eps[:, None]).T
            J[2, :] = normal
            try:
                dX = -np.linalg.solve(J, np.array([r0[0], r0[1], g]))
            except np.linalg.LinAlgError:
                return None
            X = X + dX
        return None


def _eigen_start(spec, k, nu):
    """Direction ``(c, d)`` of the linear eigenfunction of class ``(k, nu)``
    scaled so that ``|d| = START_AMPLITUDE``, and ``lambda_k``."""
    rec = find_record(half_eigenvalues(spec, 1.0, 1.0, k), k, nu)
    p = make_profile(1.0, 1.0)
    c0, d0 = w_eval(p, rec.s, rec.delta, -1.0)
    scale = START_AMPLITUDE / abs(d0)
    return rec.lam, c0 * scale, d0 * scale


def continue_branch(spec, nl, k, nu, max_steps=200, step=DEFAULT_STEP,
                    ds_init=0.05, ds_min=1e-8, ds_max=0.5,
                    amplitude_cap=AMPLITUDE_CAP, stop_lambda=None):
    """Pseudo-arclength continuation in ``(lam, c, d)``.

    The first two points are computed with ``d`` held at one and two times
    ``START_AMPLITUDE`` along the eigenfunction direction; later points use
    a secant predictor and a corrector orthogonal to it.  Every accepted
    point must keep nodal class ``(k, nu)``.  Stops after ``max_steps``
    points, when the amplitude passes ``amplitude_cap``, or (if given) on
    the first step across ``stop_lambda``.

    Raises
    ------
    BranchLost
        If the corrector keeps failing down to an arclength step ``ds_min``.
    """
    if nl.f0 is None:
        raise ConditionFails("continuation needs the slope f0 at 0")
    lam_k, c_e, d_e = _eigen_start(spec, k, nu)
    prob = _BranchProblem(spec, nl, step)
    lam0 = lam_k / nl.f0

    points = []
    trajs = []
    for mult in (1.0, 2.0):
        guess = np.array([lam0, mult * c_e, mult * d_e])
        got = prob.correct(guess, np.array([0.0, 0.0, 1.0]))
        if got is None:
            raise BranchLost(f"could not start the branch at lambda={lam0}")
        X, tr, _ = got
        if tr.nodal_class() != (k, nu):
            raise BranchLost(f"start point has nodal class {tr.nodal_class()}")
        points.append(X)
        trajs.append(tr)

    ds = ds_init
    out = [BranchPoint(float(X[0]), tr.amplitude, float(X[1]), float(X[2]))
           for X, tr in zip(points, trajs)]
    while len(out) < max_steps:
        if out[-1].amplitude > amplitude_cap:
            break
        if stop_lambda is not None and len(out) >= 2:
            if (out[-2].lam - stop_lambda) * (out[-1].lam - stop_lambda) <= 0:
                break
        secant = points[-1] - points[-2]
        tau = secant / np.linalg.norm(secant)
        got = None
        while ds >= ds_min:
            X_pred = points[-1] + ds * tau
            got = prob.correct(X_pred, tau)
            if got is not None:
                X, tr, iters = got
                if tr.nodal_class() == (k, nu) and np.linalg.norm(X - points[-1]) < 2 * ds:
                    break
            got = None
            ds *= 0.5
        if got is None:
            raise BranchLost(f"corrector failed near lambda={out[-1].lam:.6g}")
        points.append(X)
        out.append(BranchPoint(float(X[0]), tr.amplitude, float(X[1]), float(X[2])))
        if iters <= 3:
            ds = min(ds_max, 1.5 * ds)
    return out


def nodal_condition(spec, nl, k, nu):
    """``(lambda_k / f0 - 1) * (lambda_{k,nu}(f_inf, f_-inf) - 1)``; a nodal
    solution of class ``(k, nu)`` is guaranteed when this is negative."""
    lam_k = find_record(half_eigenvalues(spec, 1.0, 1.0, k), k, nu).lam
    lam_knu = find_record(
        half_eigenvalues(spec, nl.f_plus_inf, nl.f_minus_inf, k), k, nu).lam
    return (lam_k / nl.f0 - 1.0) * (lam_knu - 1.0)


def find_nodal(spec, nl, k, nu, step=DEFAULT_STEP, max_steps=400):
    """Solution of ``-u'' = f(u)`` of nodal class ``(k, nu)``.

    Follows the bifurcating branch until it crosses ``lam = 1`` and then
    corrects at ``lam = 1`` exactly.

    Raises
    ------
    ConditionFails
        If ``f0`` is missing, ``s f(s) > 0`` fails on samples, or the
        product from :func:`nodal_condition` is not negative.
    BranchLost
        If the branch cannot be followed to ``lam = 1``.
    """
    if nl.f0 is None:
        raise ConditionFails("f0 must be declared")
    if not nl.sign_condition_holds():
        raise ConditionFails("s f(s) > 0 fails on sample points")
    product = nodal_condition(spec, nl, k, nu)
    if not product < 0:
        raise ConditionFails(f"condition product is {product:.6g} (needs < 0)")
    branch = continue_branch(spec, nl, k, nu, max_steps=max_steps, step=step,
                             stop_lambda=1.0)
    if len(branch) < 2 or (branch[-2].lam - 1.0) * (branch[-1].lam - 1.0) > 0:
        raise BranchLost("branch did not reach lambda = 1")
    p0, p1 = branch[-2], branch[-1]
    w = (1.0 - p0.lam) / (p1.lam - p0.lam) if p1.lam != p0.lam else 0.0
    guess = np.array([1.0, p0.c + w * (p1.c - p0.c), p0.d + w * (p1.d - p0.d)])
    prob = _BranchProblem(spec, nl, step)
    got = prob.correct(guess, np.array([1.0, 0.0, 0.0]), max_iter=30)
    if got is None:
        raise BranchLost("corrector failed at lambda = 1")
    _, tr, _ = got
    if tr.nodal_class() != (k, nu):
        raise BranchLost(f"solution at lambda = 1 has class {tr.nodal_class()}")
    return tr
