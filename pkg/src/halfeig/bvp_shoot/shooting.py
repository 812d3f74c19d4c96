"""Two-parameter shooting from x = -1 for the multi-point problem.

The unknowns are ``c = u(-1)`` and ``d = u'(-1)``; the equations are the
two boundary residuals

    R- = u(-1) - sum alpha-_i u(eta-_i),   R+ = u(1) - sum alpha+_i u(eta+_i).

Every start of a multistart lattice runs a damped Newton iteration with a
finite-difference Jacobian; all starts are integrated as one batch.
An empty result means the search found nothing, not that no solution
exists.
"""

from dataclasses import dataclass

import numpy as np

from .integrator import Trajectory, integrate_many, sample_at

__all__ = [
    "ShootingState",
    "lattice",
    "boundary_residuals",
    "shooting_state",
    "halflinear_rhs",
    "newton_shoot",
    "deduplicate",
    "solve_halflinear",
    "solve_nonlinear",
]

DEFAULT_STEP = 0.01
CONVERGED_RTOL = 1e-10


@dataclass(frozen=True)
class ShootingState:
    c: float
    d: float
    residual_minus: float
    residual_plus: float

    @property
    def residual(self):
        return max(abs(self.residual_minus), abs(self.residual_plus))


def lattice(n=21, lo=-10.0, hi=10.0):
    """``n x n`` grid of ``(c, d)`` starts on ``[lo, hi]**2``."""
    axis = np.linspace(lo, hi, n)
    cc, dd = np.meshgrid(axis, axis, indexing="ij")
    return np.column_stack([cc.ravel(), dd.ravel()])


def spec_nodes(spec):
    return tuple(spec.eta_minus) + tuple(spec.eta_plus)


def _batch_residuals(spec, grid, U, V):
    out = np.empty((U.shape[0], 2))
    for col, sign in ((0, -1), (1, 1)):
        eta0, eta, alpha = spec.side(sign)
        r = U[:, 0] if sign < 0 else U[:, -1]
        r = r.copy()
        for a_i, e_i in zip(alpha, eta):
            if a_i != 0.0:
                r -= a_i * sample_at(grid, U, V, e_i)
        out[:, col] = r
    return out


def boundary_residuals(spec, traj):
    """``(R-, R+)`` for a trajectory."""
    r = _batch_residuals(spec, traj.grid, traj.values[None, :], traj.derivatives[None, :])
    return float(r[0, 0]), float(r[0, 1])


def shooting_state(spec, traj):
    rm, rp = boundary_residuals(spec, traj)
    return ShootingState(traj.c, traj.d, rm, rp)


def halflinear_rhs(a, b, lam, h):
    def rhs(x, u):
        return lam * (a * np.maximum(u, 0.0) - b * np.maximum(-u, 0.0)) + h(x)
    return rhs


def nonlinear_rhs(nl, h):
    f = nl.f

    def rhs(x, u):
        return f(u) + h(x)
    return rhs


def _breakpoints(spec, h):
    return spec_nodes(spec) + tuple(getattr(h, "breakpoints", ()))


def newton_shoot(spec, rhs, starts, step=DEFAULT_STEP, breakpoints=(),
                 max_iter=60, rtol=CONVERGED_RTOL):
    """Damped Newton from every start; returns converged trajectories.

    A start converges when ``max(|R-|, |R+|) <= rtol * (1 + amplitude)``.
    Steps that do not reduce the residual norm are halved (down to
    ``1e-10``) before the start is abandoned.
    """
    Z = np.array(starts, dtype=float).reshape(-1, 2)
    n = Z.shape[0]
    bps = tuple(breakpoints) + spec_nodes(spec)
    norm_prev = np.full(n, np.inf)
    delta = np.zeros((n, 2))
    t = np.ones(n)
    trial = Z.copy()
    active = np.ones(n, dtype=bool)
    converged = np.zeros(n, dtype=bool)
    kept = {}

    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zt = trial[idx]
        eps = 1e-7 * (1.0 + np.abs(zt).sum(axis=1))
        cs = np.concatenate([zt[:, 0], zt[:, 0] + eps, zt[:, 0]])
        ds = np.concatenate([zt[:, 1], zt[:, 1], zt[:, 1] + eps])
        grid, U, V = integrate_many(rhs, cs, ds, step, bps)
        R = _batch_residuals(spec, grid, U, V)
        m = idx.size
        R0, Rc, Rd = R[:m], R[m:2 * m], R[2 * m:]
        J = np.stack([(Rc - R0) / eps[:, None], (Rd - R0) / eps[:, None]], axis=2)
        amp = np.max(np.abs(U[:m]), axis=1)
        norm = np.max(np.abs(R0), axis=1)
        ok = np.isfinite(norm) & np.all(np.isfinite(J), axis=(1, 2))

        better = ok & (norm < norm_prev[idx])
        for j_local in np.flatnonzero(~better):
            i = idx[j_local]
            t[i] *= 0.5
            if t[i] < 1e-10:
                active[i] = False
            else:
                trial[i] = Z[i] + t[i] * delta[i]
        for j_local in np.flatnonzero(better):
            i = idx[j_local]
            Z[i] = zt[j_local]
            norm_prev[i] = norm[j_local]
            if norm[j_local] <= rtol * (1.0 + amp[j_local]):
                converged[i] = True
                active[i] = False
                kept[i] = Trajectory(grid, U[j_local].copy(), V[j_local].copy())
                continue
            try:
                step_i = -np.linalg.solve(J[j_local], R0[j_local])
            except np.linalg.LinAlgError:
                active[i] = False
                continue
            delta[i] = step_i
            t[i] = 1.0
            trial[i] = Z[i] + step_i
    return [kept[i] for i in sorted(kept)]


def deduplicate(trajectories, rtol=1e-6):
    """Drop trajectories within ``rtol * (1 + amplitude)`` in sup-distance
    of one already kept."""
    out = []
    for tr in trajectories:
        if not any(np.max(np.abs(tr.values - o.values))
                   < rtol * (1.0 + max(tr.amplitude, o.amplitude)) for o in out):
            out.append(tr)
    return out


def solve_halflinear(spec, a, b, lam, h, starts=None, step=DEFAULT_STEP):
    """Solutions of ``-u'' = lam (a u^+ - b u^-) + h(x)`` found by multistart
    shooting (default: 21 x 21 lattice on ``[-10, 10]**2``)."""
    if starts is None:
        starts = lattice()
    rhs = halflinear_rhs(a, b, lam, h)
    found = newton_shoot(spec, rhs, starts, step, _breakpoints(spec, h))
    return deduplicate(found)


def solve_nonlinear(spec, nl, h, starts=None, step=DEFAULT_STEP):
    """Solutions of ``-u'' = f(u) + h(x)`` found by multistart shooting."""
    if starts is None:
        starts = lattice()
    rhs = nonlinear_rhs(nl, h)
    found = newton_shoot(spec, rhs, starts, step, _breakpoints(spec, h))
    return deduplicate(found)
