"""Named nonlinearities ``f`` and forcing terms ``h`` used by the solvers
and the command line.

Grammar (``name:comma,separated,params``)::

    f:  linear:c | rational_bump:f0,finf | atan_shift:fplus,fminus[,c]
    h:  zero | one | step:x0[,level] | samples:path
"""

import csv
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "NonlinearityDescriptor",
    "linear",
    "rational_bump",
    "atan_shift",
    "parse_nonlinearity",
    "SampledForcing",
    "constant_forcing",
    "parse_forcing",
]


@dataclass(frozen=True)
class NonlinearityDescriptor:
    """``f`` together with its declared linear growth rates.

    ``f`` must accept numpy arrays.  ``f0`` is the slope at 0 (``None`` if
    ``f`` has no derivative there).
    """

    f: Callable
    f_plus_inf: float
    f_minus_inf: float
    f0: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        for v in (self.f_plus_inf, self.f_minus_inf):
            if not (math.isfinite(v) and v > 0):
                raise ValueError("asymptotic slopes must be finite and positive")

    def __call__(self, u):
        return self.f(u)

    def sign_condition_holds(self, samples=None):
        """Check ``s * f(s) > 0`` on sample points away from 0."""
        if samples is None:
            mags = np.logspace(-4, 4, 81)
            samples = np.concatenate([-mags, mags])
        s = np.asarray(samples, dtype=float)
        s = s[s != 0]
        return bool(np.all(s * self.f(s) > 0))


def linear(c):
    c = float(c)
    return NonlinearityDescriptor(lambda u: c * u, c, c, c, f"linear:{c!r}")


def rational_bump(f0, finf):
    """``f(s) = s (finf + (f0 - finf) / (1 + s**2))``: slope ``f0`` at 0,
    slope ``finf`` at both infinities."""
    f0, finf = float(f0), float(finf)

    def f(u):
        return u * (finf + (f0 - finf) / (1.0 + u * u))

    return NonlinearityDescriptor(f, finf, finf, f0, f"rational_bump:{f0!r},{finf!r}")


def atan_shift(fplus, fminus, c=1.0):
    """``f(s) = fplus s^+ - fminus s^- + c atan(s)``, a jumping nonlinearity
    with a bounded perturbation."""
    fp, fm, c = float(fplus), float(fminus), float(c)

    def f(u):
        return fp * np.maximum(u, 0.0) - fm * np.maximum(-u, 0.0) + c * np.arctan(u)

    f0 = fp + c if fp == fm else None
    return NonlinearityDescriptor(f, fp, fm, f0, f"atan_shift:{fp!r},{fm!r},{c!r}")


_F_FAMILIES = {
    "linear": (linear, 1, 1),
    "rational_bump": (rational_bump, 2, 2),
    "atan_shift": (atan_shift, 2, 3),
}


def _split(text):
    name, _, rest = text.partition(":")
    return name.strip(), [t for t in rest.split(",") if t.strip()]


def parse_nonlinearity(text):
    name, params = _split(text)
    if name not in _F_FAMILIES:
        raise ValueError(f"unknown nonlinearity {name!r}; "
                         f"choose from {sorted(_F_FAMILIES)}")
    factory, lo, hi = _F_FAMILIES[name]
    if not lo <= len(params) <= hi:
        raise ValueError(f"{name} takes {lo}..{hi} parameters, got {len(params)}")
    return factory(*(float(v) for v in params))


class SampledForcing:
    """Piecewise-linear forcing through ``(x_i, h_i)`` samples."""

    def __init__(self, xs, hs):
        xs = np.asarray(xs, dtype=float)
        hs = np.asarray(hs, dtype=float)
        if xs.ndim != 1 or xs.shape != hs.shape or xs.size < 2:
            raise ValueError("need matching 1-d sample arrays with >= 2 points")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("sample abscissae must be strictly increasing")
        self.xs, self.hs = xs, hs

    @property
    def breakpoints(self):
        return tuple(self.xs)

    def __call__(self, x):
        return np.interp(x, self.xs, self.hs)

    @classmethod
    def from_csv(cls, path):
        xs, hs = [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().lower() in ("x", "#"):
                    continue
                xs.append(float(row[0]))
                hs.append(float(row[1]))
        return cls(xs, hs)


def constant_forcing(value):
    value = float(value)

    def h(x):
        return np.full(np.shape(x), value)

    return h


def parse_forcing(text):
    """Build ``h`` from the command-line grammar."""
    from ..solvability import ForcingFunction

    name, params = _split(text)
    if name == "zero" and not params:
        return constant_forcing(0.0)
    if name == "one" and not params:
        return constant_forcing(1.0)
    if name == "step" and 1 <= len(params) <= 2:
        x0 = float(params[0])
        if not -1.0 < x0 < 1.0:
            raise ValueError("step switch point must lie in (-1, 1)")
        level = float(params[1]) if len(params) == 2 else -1.0
        return ForcingFunction(x0, level)
    if name == "samples" and len(params) == 1:
        return SampledForcing.from_csv(params[0])
    raise ValueError(f"cannot parse forcing {text!r}")
