"""Where a given lambda sits relative to the half-eigenvalues, and a forcing
term with no solution when it sits inside a split pair.

Between ``lambda_{k,max}`` and ``lambda_{k+1,min}`` (a *gap* interval) the
inhomogeneous problem is solvable for every forcing and the degree is
``(-1)**k``.  Between ``lambda_{k,min}`` and ``lambda_{k,max}`` (a *split*
interval) the degree is 0 and some step forcing has no solution.  The
degree is reported from that rule, not computed.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import NotSplitInterval
from .jumping_profile import profile_from_ab, zeros
from .residual import b_value, delta_roots, gamma_pm
from .spectrum import coincident, find_record, half_eigenvalues

__all__ = [
    "GAP",
    "SPLIT",
    "NEAR",
    "LambdaClassification",
    "ForcingFunction",
    "classify_lambda",
    "nonsolvable_forcing",
]

GAP = "gap"
SPLIT = "split"
NEAR = "near_half_eigenvalue"

NEAR_RTOL = 1e-8


@dataclass(frozen=True)
class LambdaClassification:
    kind: str
    k: int
    degree: Optional[int]
    b_sign: Optional[int]
    bounds: Tuple[float, float]
    nu: Optional[int] = None

    def to_dict(self):
        return {
            "kind": self.kind,
            "k": self.k,
            "nu": self.nu,
            "degree": self.degree,
            "b_sign": self.b_sign,
            "bounds": [_json_float(v) for v in self.bounds],
        }


def _json_float(v):
    return None if math.isinf(v) else v


@dataclass(frozen=True)
class ForcingFunction:
    """Step forcing: 0 on ``[-1, x0)`` and ``level`` on ``[x0, 1]``."""

    x0: float
    level: float = -1.0

    @property
    def breakpoints(self):
        return (self.x0,)

    def __call__(self, x):
        return np.where(np.asarray(x) >= self.x0, self.level, 0.0)

    def to_dict(self):
        return {"x0": self.x0, "level": self.level}

    @classmethod
    def from_dict(cls, data):
        return cls(float(data["x0"]), float(data.get("level", -1.0)))


def _bracketing_records(spec, a, b, lam):
    k_max = 4
    while True:
        records = half_eigenvalues(spec, a, b, k_max)
        top = find_record(records, k_max, 1).lam, find_record(records, k_max, -1).lam
        if min(top) > lam:
            return records, k_max
        k_max *= 2


def classify_lambda(spec, a, b, lam):
    """Classify ``lam`` as a gap interval, split interval, or (numerically)
    a half-eigenvalue.

    ``b_sign`` is the sign of the product of the +1 residuals along the two
    phase branches; it should be -1 on gaps and +1 on splits.  For
    ``lam <= 0`` no such check is made.
    """
    if lam <= 0.0:
        records = half_eigenvalues(spec, a, b, 1)
        lo1 = min(r.lam for r in records)
        return LambdaClassification(GAP, 0, 1, None, (-math.inf, lo1))

    records, k_max = _bracketing_records(spec, a, b, lam)
    near = [r for r in records if abs(lam - r.lam) < NEAR_RTOL * max(1.0, lam)]
    if near:
        best = min(near, key=lambda r: abs(lam - r.lam))
        return LambdaClassification(NEAR, best.k, None, None, (best.lam, best.lam),
                                    nu=best.nu)

    p = profile_from_ab(a, b)
    b_sign = int(np.sign(b_value(p, math.sqrt(lam), spec)))
    lows = [min(find_record(records, k, 1).lam, find_record(records, k, -1).lam)
            for k in range(1, k_max + 1)]
    highs = [max(find_record(records, k, 1).lam, find_record(records, k, -1).lam)
             for k in range(1, k_max + 1)]
    if lam < lows[0]:
        return LambdaClassification(GAP, 0, 1, b_sign, (-math.inf, lows[0]))
    for k in range(1, k_max + 1):
        lo, hi = lows[k - 1], highs[k - 1]
        if lo < lam < hi and not coincident(lo, hi):
            return LambdaClassification(SPLIT, k, 0, b_sign, (lo, hi))
        if k < k_max and hi < lam < lows[k]:
            return LambdaClassification(GAP, k, (-1) ** k, b_sign, (hi, lows[k]))
    raise AssertionError(f"lambda={lam} not bracketed by {k_max} levels")


def nonsolvable_forcing(spec, a, b, lam):
    """Step forcing for which ``-u'' = lam (a u^+ - b u^-) + h`` has no
    solution with the multi-point conditions.

    The switch point ``x0`` lies beyond every interior node, close enough
    to 1 that the linear comparison problem cannot oscillate on
    ``[x0, 1]``, and beyond the last zero of both phase-branch solutions.
    The level is chosen opposite in sign to the common sign of the +1
    residuals.

    Raises
    ------
    NotSplitInterval
        Unless ``lam`` lies strictly inside a split interval.
    """
    cls = classify_lambda(spec, a, b, lam)
    if cls.kind != SPLIT:
        raise NotSplitInterval(f"lambda={lam} is classified as {cls.kind} (k={cls.k})")
    p = profile_from_ab(a, b)
    s = math.sqrt(lam)
    roots = delta_roots(p, s, spec)
    res = [gamma_pm(p, s, d, spec, 1) for d in (roots.delta_plus, roots.delta_minus)]
    if (res[0] > 0) != (res[1] > 0):
        raise NotSplitInterval("residuals at +1 disagree in sign")
    level = -1.0 if res[0] > 0 else 1.0

    x0 = 1.0 - min(0.1, math.pi / (4.0 * math.sqrt(lam * max(a, b) + 1.0)))
    nodes = spec.active_nodes
    if nodes:
        top = max(nodes)
        x0 = max(x0, top + 0.5 * (1.0 - top))
    for d in (roots.delta_plus, roots.delta_minus):
        z = zeros(p, s, d, -1.0, 1.0)
        if z and z[-1] >= x0:
            x0 = z[-1] + 0.5 * (1.0 - z[-1])
    return ForcingFunction(x0, level)
