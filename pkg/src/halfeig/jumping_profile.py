"""Closed-form evaluation of the fundamental jumping profile.

``Psi`` solves ``-Psi'' = gp**2 Psi^+ - gm**2 Psi^-`` with ``Psi(0) = 0``,
``Psi'(0) = 1``.  It is a periodic chain of sine bumps: a positive bump of
length ``pi/gp`` followed by a negative bump of length ``pi/gm``.  The
scaled translates ``w(s, delta)(x) = Psi(s*x - delta)`` are all the
solutions of ``-u'' = s**2 (gp**2 u^+ - gm**2 u^-)`` up to a positive factor.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryCriticalPoint, NonPositiveGamma

__all__ = [
    "JumpingProfile",
    "make_profile",
    "profile_from_ab",
    "psi_eval",
    "w_eval",
    "critical_points",
    "zeros",
    "nodal_class",
    "wrap_phase",
    "phase_distance",
]


@dataclass(frozen=True)
class JumpingProfile:
    gamma_plus: float
    gamma_minus: float

    @property
    def a(self):
        return self.gamma_plus**2

    @property
    def b(self):
        return self.gamma_minus**2

    @property
    def positive_length(self):
        """Length of one positive bump, ``pi/gamma_plus``."""
        return math.pi / self.gamma_plus

    @property
    def period(self):
        return math.pi / self.gamma_plus + math.pi / self.gamma_minus

    def psi(self, x):
        """Scalar ``(Psi(x), Psi'(x))``; faster than :func:`psi_eval` for floats."""
        gp = self.gamma_plus
        y = x % self.period
        split = math.pi / gp
        if y < split:
            t = gp * y
            return math.sin(t) / gp, math.cos(t)
        gm = self.gamma_minus
        t = gm * (y - split)
        return -math.sin(t) / gm, -math.cos(t)

    def psi_value(self, x):
        gp = self.gamma_plus
        y = x % self.period
        split = math.pi / gp
        if y < split:
            return math.sin(gp * y) / gp
        gm = self.gamma_minus
        return -math.sin(gm * (y - split)) / gm


def make_profile(gamma_plus, gamma_minus):
    """Validated :class:`JumpingProfile`; both arguments must be finite and > 0."""
    gp = float(gamma_plus)
    gm = float(gamma_minus)
    for name, g in (("gamma_plus", gp), ("gamma_minus", gm)):
        if not math.isfinite(g) or g <= 0.0:
            raise NonPositiveGamma(f"{name} must be finite and positive, got {g!r}")
    return JumpingProfile(gp, gm)


def profile_from_ab(a, b):
    """Profile for coefficients ``a = gamma_plus**2``, ``b = gamma_minus**2``."""
    if not (a > 0 and b > 0):
        raise NonPositiveGamma(f"a and b must be positive, got a={a!r}, b={b!r}")
    return make_profile(math.sqrt(a), math.sqrt(b))


def psi_eval(p, x):
    """Return ``(Psi(x), Psi'(x))``.

    Works for scalars and numpy arrays.  The argument is reduced modulo the
    period, then evaluated on the positive or negative sine branch.
    """
    if np.isscalar(x):
        return p.psi(float(x))
    x = np.asarray(x, dtype=float)
    gp, gm = p.gamma_plus, p.gamma_minus
    split = math.pi / gp
    y = np.mod(x, p.period)
    pos = y < split
    t_pos = gp * y
    t_neg = gm * (y - split)
    value = np.where(pos, np.sin(t_pos) / gp, -np.sin(t_neg) / gm)
    deriv = np.where(pos, np.cos(t_pos), -np.cos(t_neg))
    return value, deriv


def w_eval(p, s, delta, x):
    """``(w, w')`` for ``w(x) = Psi(s*x - delta)``."""
    value, deriv = psi_eval(p, s * x - delta)
    return value, s * deriv


def wrap_phase(delta, period):
    """Representative of ``delta`` in ``[0, period)``."""
    d = math.fmod(delta, period)
    if d < 0.0:
        d += period
    if d >= period:
        d = 0.0
    return d


def phase_distance(d1, d2, period):
    d = abs(wrap_phase(d1 - d2, period))
    return min(d, period - d)


def _preimages(offsets, p, s, delta, lo, hi):
    # x with s*x - delta = offset + n*period, lo < x < hi
    ylo = s * lo - delta
    yhi = s * hi - delta
    per = p.period
    out = []
    for off in offsets:
        n0 = math.floor((ylo - off) / per)
        n1 = math.ceil((yhi - off) / per)
        for n in range(n0, n1 + 1):
            x = (off + n * per + delta) / s
            if lo < x < hi:
                out.append(x)
    out.sort()
    return out


def critical_points(p, s, delta, lo, hi):
    """All zeros of ``w(s, delta)'`` in the open interval ``(lo, hi)``.

    These are the bump midpoints mapped back through ``x -> s*x - delta``.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    mids = (0.5 * math.pi / p.gamma_plus,
            math.pi / p.gamma_plus + 0.5 * math.pi / p.gamma_minus)
    return _preimages(mids, p, s, delta, lo, hi)


def zeros(p, s, delta, lo, hi):
    """All zeros of ``w(s, delta)`` in ``(lo, hi)``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    return _preimages((0.0, math.pi / p.gamma_plus), p, s, delta, lo, hi)


def endpoint_tolerance(p, s):
    return 1e-9 * s * max(p.gamma_plus, p.gamma_minus)


def nodal_class(p, s, delta):
    """Nodal class ``(k, nu)`` of ``w(s, delta)`` on ``[-1, 1]``.

    ``k`` counts interior critical points and ``nu`` is the sign of the
    derivative at -1.  The sinusoidal shape guarantees a zero between
    consecutive critical points, so only the end-point derivatives need
    checking.

    Raises
    ------
    BoundaryCriticalPoint
        If ``w'`` vanishes (to a scale-aware tolerance) at -1 or 1.
    """
    tol = endpoint_tolerance(p, s)
    _, dl = w_eval(p, s, delta, -1.0)
    _, dr = w_eval(p, s, delta, 1.0)
    if abs(dl) < tol or abs(dr) < tol:
        raise BoundaryCriticalPoint(
            f"w'(-1)={dl:.3e}, w'(1)={dr:.3e} (tolerance {tol:.1e})")
    k = len(critical_points(p, s, delta, -1.0, 1.0))
    nu = 1 if dl > 0 else -1
    return k, nu
