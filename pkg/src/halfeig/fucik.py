"""Fucik curves traced along rays ``(a, b) = lambda * (sin theta, cos theta)``."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchMismatch
from .spectrum import find_record, half_eigenvalues, linear_eigenvalues

__all__ = ["FucikSample", "default_theta_grid", "trace_curve", "diagonal_crossing"]


@dataclass(frozen=True)
class FucikSample:
    theta: float
    lam: float
    a: float
    b: float


def default_theta_grid(n=101, lo=0.02, hi=math.pi / 2 - 0.02):
    """Chebyshev-spaced angles on ``[lo, hi]``, increasing."""
    if n < 2:
        raise ValueError("need at least two grid points")
    j = np.arange(n)
    nodes = -np.cos(math.pi * j / (n - 1))
    return 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes


def _lambda_on_ray(spec, k, nu, theta):
    records = half_eigenvalues(spec, math.sin(theta), math.cos(theta), k)
    return find_record(records, k, nu).lam


def trace_curve(spec, k, nu, theta_grid=None):
    """Sample the curve of nodal class ``(k, nu)`` at each angle.

    Each sample ``(a, b)`` is a point where ``lambda = 1`` is the
    half-eigenvalue of class ``(k, nu)``.
    """
    if theta_grid is None:
        theta_grid = default_theta_grid()
    out = []
    for theta in sorted(float(t) for t in theta_grid):
        if not 0.0 < theta < math.pi / 2:
            raise ValueError(f"theta {theta} outside (0, pi/2)")
        lam = _lambda_on_ray(spec, k, nu, theta)
        out.append(FucikSample(theta, lam, lam * math.sin(theta), lam * math.cos(theta)))
    return out


def diagonal_crossing(spec, k, rtol=1e-8):
    """Point ``(lambda_k, lambda_k)`` where both curves of index ``k`` meet
    the diagonal, cross-checked by tracing both curves at 45 degrees."""
    lam_k = linear_eigenvalues(spec, k)[k - 1]
    for nu in (1, -1):
        sample = trace_curve(spec, k, nu, [math.pi / 4])[0]
        for coord in (sample.a, sample.b):
            if abs(coord - lam_k) > rtol * lam_k:
                raise BranchMismatch(
                    f"curve ({k},{nu:+d}) meets the diagonal at {coord!r}, "
                    f"expected {lam_k!r}")
    return lam_k, lam_k
