"""Half-eigenvalues by sweeping the scale ``s`` along the two phase branches.

For each ``s`` the condition at -1 fixes two phases ``delta_+(s)`` and
``delta_-(s)``.  Along each branch the residual at +1 is a continuous
function of ``s`` whose roots are exactly the half-eigenvalues
``lambda = s**2``; the nodal class of ``w(s, delta)`` at a root tells which
``(k, nu)`` it belongs to.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (BoundaryCriticalPoint, BranchMismatch, IncompleteSpectrum,
                     RootCountMismatch)
from .jumping_profile import (critical_points, nodal_class, profile_from_ab,
                              w_eval)
from .residual import delta_roots, gamma_pm, phase_roots

__all__ = [
    "HalfEigenvalue",
    "ScanHit",
    "half_eigenvalues",
    "linear_eigenvalues",
    "eigenfunction_samples",
    "scan_branch_roots",
    "find_record",
    "coincident",
]

RESIDUAL_TOL = 1e-11
COINCIDENT_RTOL = 1e-9


@dataclass(frozen=True)
class HalfEigenvalue:
    k: int
    nu: int
    lam: float
    s: float
    delta: float
    residual: float


def _branch_delta(p, s, spec, nu):
    roots = delta_roots(p, s, spec)
    return roots.delta_plus if nu > 0 else roots.delta_minus


def _sweep_grid(p, s_hi, s_min=None):
    ds = math.pi / (8.0 * max(p.gamma_plus, p.gamma_minus))
    if s_min is None:
        s_min = 1e-4 * ds
    head = np.geomspace(s_min, ds, 12)[:-1]
    body = np.arange(1, int(math.ceil(s_hi / ds)) + 1) * ds
    return np.concatenate([head, body])


def _branch_roots(p, spec, grid, branch_values, nu):
    """Roots in ``s`` of the +1 residual along the branch labelled ``nu``."""

    def g(s):
        return gamma_pm(p, s, _branch_delta(p, s, spec, nu), spec, 1)

    out = []
    vals = branch_values
    for j in range(len(grid) - 1):
        f0, f1 = vals[j], vals[j + 1]
        if f0 == 0.0:
            out.append(grid[j])
            continue
        if (f0 > 0) == (f1 > 0) or f1 == 0.0:
            continue
        out.append(brentq(g, grid[j], grid[j + 1], xtol=1e-15,
                          rtol=4 * np.finfo(float).eps, maxiter=200))
    if vals[-1] == 0.0:
        out.append(grid[-1])
    return out


def _sample_branches(p, spec, grid):
    plus = np.empty(len(grid))
    minus = np.empty(len(grid))
    for j, s in enumerate(grid):
        roots = delta_roots(p, s, spec)
        plus[j] = gamma_pm(p, s, roots.delta_plus, spec, 1)
        minus[j] = gamma_pm(p, s, roots.delta_minus, spec, 1)
    return plus, minus


def _record(p, spec, s, nu):
    delta = _branch_delta(p, s, spec, nu)
    res = abs(gamma_pm(p, s, delta, spec, 1))
    k, nu_found = nodal_class(p, s, delta)
    if nu_found != nu:
        raise IncompleteSpectrum(
            f"root at s={s} on branch {nu:+d} has derivative sign {nu_found:+d}")
    s = float(s)
    return HalfEigenvalue(k, nu, s * s, s, float(delta), float(res))


def half_eigenvalues(spec, a, b, k_max):
    """All half-eigenvalues ``lambda_{k,nu}(a, b)`` with ``k <= k_max``.

    Returns ``2 * k_max`` records sorted by ``lambda`` (ties ordered ``+``
    first).

    Raises
    ------
    IncompleteSpectrum
        If some ``(k, nu)`` is missing or repeated, a residual exceeds
        ``1e-11``, or the ordering across ``k`` is violated.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    p = profile_from_ab(a, b)
    s_hi = (k_max + 2) * math.pi / (2.0 * min(p.gamma_plus, p.gamma_minus))
    grid = _sweep_grid(p, s_hi)
    try:
        plus, minus = _sample_branches(p, spec, grid)
        records = []
        for nu, vals in ((1, plus), (-1, minus)):
            for s in _branch_roots(p, spec, grid, vals, nu):
                rec = _record(p, spec, s, nu)
                if rec.k <= k_max:
                    records.append(rec)
    except (RootCountMismatch, BoundaryCriticalPoint) as exc:
        raise IncompleteSpectrum(f"sweep failed: {exc}") from exc

    seen = {}
    for rec in records:
        key = (rec.k, rec.nu)
        if key in seen:
            raise IncompleteSpectrum(f"duplicate half-eigenvalue for {key}")
        if rec.residual > RESIDUAL_TOL:
            raise IncompleteSpectrum(
                f"residual {rec.residual:.2e} at {key} exceeds {RESIDUAL_TOL}")
        seen[key] = rec
    missing = [(k, nu) for k in range(1, k_max + 1) for nu in (1, -1)
               if (k, nu) not in seen]
    if missing:
        raise IncompleteSpectrum(f"missing half-eigenvalues {missing}")
    for k in range(1, k_max):
        top = max(seen[k, 1].lam, seen[k, -1].lam)
        bottom = min(seen[k + 1, 1].lam, seen[k + 1, -1].lam)
        if not top < bottom:
            raise IncompleteSpectrum(f"ordering violated between k={k} and k={k + 1}")
    return sorted(seen.values(), key=lambda r: (r.k, r.lam, -r.nu))


def find_record(records, k, nu):
    for rec in records:
        if rec.k == k and rec.nu == nu:
            return rec
    raise KeyError((k, nu))


def coincident(lam1, lam2, rtol=COINCIDENT_RTOL):
    return abs(lam1 - lam2) < rtol * max(abs(lam1), abs(lam2))


def linear_eigenvalues(spec, k_max):
    """Eigenvalues of ``-u'' = lambda u`` with the multi-point conditions."""
    records = half_eigenvalues(spec, 1.0, 1.0, k_max)
    out = []
    for k in range(1, k_max + 1):
        lp = find_record(records, k, 1).lam
        lm = find_record(records, k, -1).lam
        if not coincident(lp, lm):
            raise BranchMismatch(f"k={k}: branches give {lp!r} and {lm!r}")
        out.append(0.5 * (lp + lm))
    return out


def eigenfunction_samples(p, he, grid):
    """Half-eigenfunction on ``grid``, scaled to sup-norm 1 on [-1, 1].

    Returns an array with columns ``x, value, derivative``.  The sign is
    fixed by the record: ``nu * derivative(-1) > 0``.
    """
    x = np.asarray(grid, dtype=float)
    if x.size and (x.min() < -1.0 or x.max() > 1.0):
        raise ValueError("grid points must lie in [-1, 1]")
    probe = [-1.0, 1.0] + critical_points(p, he.s, he.delta, -1.0, 1.0)
    scale = max(abs(w_eval(p, he.s, he.delta, xp)[0]) for xp in probe)
    v, dv = w_eval(p, he.s, he.delta, x)
    return np.column_stack([x, v / scale, dv / scale])


@dataclass(frozen=True)
class ScanHit:
    """A root of the +1 residual found by :func:`scan_branch_roots`.

    ``k`` is ``None`` when the candidate has a critical point at an end
    point and so lies on the boundary of a nodal class.
    """

    s: float
    delta: float
    nu: int
    k: object
    residual: float

    @property
    def lam(self):
        return self.s * self.s


def scan_branch_roots(spec, a, b, s_max):
    """Diagnostic sweep over ``(0, s_max]`` without completeness checks.

    Intended for coefficient vectors outside the nonnegative cone, where
    uniqueness fails.  Every root of every phase branch at -1 is reported,
    classified where possible.
    """
    p = profile_from_ab(a, b)
    grid = _sweep_grid(p, s_max)
    grid = grid[grid <= s_max]
    eta0, eta, alpha = spec.side(-1)

    def branch_deltas(s):
        roots = phase_roots(p, s, eta0, eta, alpha)
        out = {}
        for d in roots:
            slope = w_eval(p, s, d, eta0)[1]
            out.setdefault(1 if slope > 0 else -1, d)
        return out

    hits = []
    for nu in (1, -1):
        def g(s, nu=nu):
            return gamma_pm(p, s, branch_deltas(s)[nu], spec, 1)

        vals = np.array([g(s) for s in grid])
        for j in range(len(grid) - 1):
            f0, f1 = vals[j], vals[j + 1]
            if f0 == 0.0 or (f0 > 0) != (f1 > 0):
                s = grid[j] if f0 == 0.0 else brentq(
                    g, grid[j], grid[j + 1], xtol=1e-15,
                    rtol=4 * np.finfo(float).eps)
                d = branch_deltas(s)[nu]
                try:
                    k, _ = nodal_class(p, s, d)
                except BoundaryCriticalPoint:
                    k = None
                hits.append(ScanHit(float(s), float(d), nu, k,
                                    abs(gamma_pm(p, s, d, spec, 1))))
    hits.sort(key=lambda h: h.s)
    return hits
