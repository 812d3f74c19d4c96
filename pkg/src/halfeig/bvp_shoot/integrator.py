"""Fixed-step RK4 for ``-u'' = rhs(x, u)`` with zero-crossing splitting.

Jumping terms such as ``a u^+ - b u^-`` are only Lipschitz at ``u = 0``.
Whenever ``u`` changes sign inside a step the crossing is located first
and the step is finished from there, so the kink always falls on a step
boundary.  Batches of trajectories are advanced together; ``rhs`` must
therefore accept numpy arrays for both ``x`` and ``u``.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import BlowUp

__all__ = ["Trajectory", "make_grid", "integrate", "integrate_many", "sample_at"]

BLOWUP = 1e12
CROSS_XTOL = 1e-12


@dataclass(frozen=True)
class Trajectory:
    grid: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray

    @property
    def amplitude(self):
        return float(np.max(np.abs(self.values)))

    @property
    def c(self):
        return float(self.values[0])

    @property
    def d(self):
        return float(self.derivatives[0])

    def value_at(self, x):
        return sample_at(self.grid, self.values[None, :], self.derivatives[None, :], x)[0]

    def nodal_class(self):
        """``(k, nu)``: interior sign changes of ``u'`` on the grid and the
        sign of ``u'(-1)``.  ``k`` is ``None`` if an end-point derivative is
        zero."""
        dv = self.derivatives
        if dv[0] == 0.0 or dv[-1] == 0.0:
            return None, 0
        signs = np.sign(dv)
        signs = signs[signs != 0]
        k = int(np.count_nonzero(signs[1:] != signs[:-1]))
        return k, (1 if dv[0] > 0 else -1)


def make_grid(step, breakpoints=()):
    """Uniform grid on [-1, 1] with extra nodes at ``breakpoints``."""
    if not step > 0:
        raise ValueError("step must be positive")
    n = max(1, int(math.ceil(2.0 / step - 1e-9)))
    grid = np.linspace(-1.0, 1.0, n + 1)
    extra = [float(b) for b in breakpoints if -1.0 < b < 1.0]
    if extra:
        grid = np.union1d(grid, extra)
        keep = np.concatenate([[True], np.diff(grid) > 1e-12])
        grid = grid[keep]
        grid[-1] = 1.0
    return grid


def _rk4(rhs, x, u, v, h, args):
    hh = 0.5 * h
    k1u = v
    k1v = -rhs(x, u, *args)
    k2u = v + hh * k1v
    k2v = -rhs(x + hh, u + hh * k1u, *args)
    k3u = v + hh * k2v
    k3v = -rhs(x + hh, u + hh * k2u, *args)
    k4u = v + h * k3v
    k4v = -rhs(x + h, u + h * k3u, *args)
    un = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    vn = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return un, vn


def _split_at_crossing(rhs, x0, u, v, u_end, h, args):
    """Advance trajectories whose ``u`` changes sign within ``[x0, x0+h]``.

    Each crossing is located to ``CROSS_XTOL`` by an Illinois-modified
    regula falsi on the single-step map, then the step is completed.
    """
    lo = np.zeros_like(u)
    hi = np.full_like(u, h)
    g_lo = u.copy()
    g_hi = u_end.copy()
    side = np.zeros(u.shape, dtype=int)
    tau = hi.copy()
    g_floor = 4 * np.finfo(float).eps * (np.abs(u) + np.abs(u_end))
    for _ in range(100):
        tau = hi - g_hi * (hi - lo) / (g_hi - g_lo)
        bad = ~np.isfinite(tau) | (tau <= lo) | (tau >= hi)
        tau[bad] = 0.5 * (lo[bad] + hi[bad])
        g, _ = _rk4(rhs, x0, u, v, tau, args)
        left = (g > 0) == (g_lo > 0)
        # Illinois: halve the stale end value when the same side repeats
        lo = np.where(left, tau, lo)
        g_new_lo = np.where(left, g, g_lo)
        g_new_hi = np.where(left, g_hi, g)
        g_new_hi = np.where(left & (side == 1), 0.5 * g_new_hi, g_new_hi)
        g_new_lo = np.where(~left & (side == -1), 0.5 * g_new_lo, g_new_lo)
        hi = np.where(left, hi, tau)
        g_lo, g_hi = g_new_lo, g_new_hi
        side = np.where(left, 1, -1)
        if np.all((hi - lo < CROSS_XTOL) | (np.abs(g) <= g_floor)):
            break
    tau = np.where(np.abs(g) <= g_floor, tau,
                   np.where(np.abs(g_lo) < np.abs(g_hi), lo, hi))
    uc, vc = _rk4(rhs, x0, u, v, tau, args)
    return _rk4(rhs, x0 + tau, uc, vc, h - tau, args)


def integrate_many(rhs, c, d, step, breakpoints=(), args=()):
    """Integrate a batch of initial value problems from x = -1 to 1.

    Parameters
    ----------
    rhs : callable
        ``rhs(x, u, *args)`` giving ``-u''``; vectorised in ``x`` and ``u``.
    c, d : array_like
        Initial values ``u(-1)`` and ``u'(-1)``, one per trajectory.
    step : float
        Nominal step; the grid also contains every breakpoint.
    args : tuple of arrays
        Per-trajectory parameters, sliced together with ``u``.

    Returns
    -------
    grid, values, derivatives
        ``values`` and ``derivatives`` have shape ``(n, len(grid))``.
        Trajectories that exceed ``1e12`` in magnitude are filled with NaN
        from that point on.
    """
    u = np.array(c, dtype=float, ndmin=1)
    v = np.array(d, dtype=float, ndmin=1)
    args = tuple(np.broadcast_to(np.asarray(a, dtype=float), u.shape) for a in args)
    grid = make_grid(step, breakpoints)
    n, m = u.size, grid.size
    U = np.empty((n, m))
    V = np.empty((n, m))
    U[:, 0] = u
    V[:, 0] = v
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(m - 1):
            x0 = grid[i]
            h = grid[i + 1] - x0
            un, vn = _rk4(rhs, x0, u, v, h, args)
            cross = np.flatnonzero(u * un < 0.0)
            if cross.size:
                sub = tuple(a[cross] for a in args)
                uc, vc = _split_at_crossing(rhs, x0, u[cross], v[cross],
                                            un[cross], h, sub)
                un[cross] = uc
                vn[cross] = vc
            dead = ~(np.abs(un) <= BLOWUP)
            if dead.any():
                un[dead] = np.nan
                vn[dead] = np.nan
            u, v = un, vn
            U[:, i + 1] = u
            V[:, i + 1] = v
    return grid, U, V


def integrate(rhs, c, d, step, breakpoints=()):
    """Single trajectory of ``-u'' = rhs(x, u)`` with ``u(-1)=c, u'(-1)=d``.

    Raises
    ------
    BlowUp
        If ``|u|`` exceeds ``1e12`` before x = 1.
    """
    grid, U, V = integrate_many(rhs, [c], [d], step, breakpoints)
    if not np.all(np.isfinite(U)):
        raise BlowUp("trajectory exceeded 1e12")
    return Trajectory(grid, U[0], V[0])


def sample_at(grid, U, V, x):
    """Values at ``x`` for every row, by cubic Hermite interpolation
    (exact at grid nodes)."""
    x = float(x)
    j = int(np.searchsorted(grid, x))
    if j < grid.size and grid[j] == x:
        return U[:, j]
    j = min(max(j, 1), grid.size - 1)
    x0, x1 = grid[j - 1], grid[j]
    h = x1 - x0
    t = (x - x0) / h
    h00 = 2 * t**3 - 3 * t**2 + 1
    h10 = t**3 - 2 * t**2 + t
    h01 = -2 * t**3 + 3 * t**2
    h11 = t**3 - t**2
    return (h00 * U[:, j - 1] + h10 * h * V[:, j - 1]
            + h01 * U[:, j] + h11 * h * V[:, j])
