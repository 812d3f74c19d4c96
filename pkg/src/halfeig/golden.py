"""Two worked counterexamples with negative boundary coefficients.

``boundary_eigenfunction_checks``: for ``a = (2 pi / 3)**2``, ``b = pi**2``
and ``u(-1) = 0``, ``u(1) = -(2/3) u(-1/4)``, an explicit half-eigenfunction
exists whose derivative vanishes at x = 1, so it sits on the edge of the
first positive nodal class.

``missing_class_scan``: for ``a = (pi/2 + eps)**2``, ``b = eps**-2`` and
``u(-1) = 0``, ``u(1) = -(1/2) u(0)``, no half-eigenvalue of class
``(2, +)`` appears.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryCriticalPoint
from .jumping_profile import make_profile, nodal_class, w_eval
from .residual import ProblemSpec, gamma
from .spectrum import scan_branch_roots

__all__ = ["Check", "boundary_eigenfunction", "boundary_eigenfunction_checks",
           "missing_class_scan", "run_all"]

GP = 2 * math.pi / 3
GM = math.pi


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def boundary_eigenfunction(x):
    """The explicit half-eigenfunction and its first two derivatives."""
    x = np.asarray(x, dtype=float)
    left = x < 0.5
    amp = 3 / (2 * math.pi)
    tl = GP * (x + 1)
    tr = GM * (x - 1)
    u = np.where(left, amp * np.sin(tl), -np.cos(tr) / math.pi)
    du = np.where(left, amp * GP * np.cos(tl), np.sin(tr))
    ddu = np.where(left, -amp * GP**2 * np.sin(tl), GM * np.cos(tr))
    return u, du, ddu


def boundary_eigenfunction_checks(tol=1e-12):
    checks = []
    x = np.linspace(-1, 1, 2001)
    u, du, ddu = boundary_eigenfunction(x)
    ode = -ddu - (GP**2 * np.maximum(u, 0) - GM**2 * np.maximum(-u, 0))
    err = float(np.max(np.abs(ode)))
    checks.append(Check("ode pieces", err <= tol, f"max residual {err:.2e}"))

    p = make_profile(GP, GM)
    w, dw = w_eval(p, 1.0, -1.0, x)
    err = float(max(np.max(np.abs(w - u)), np.max(np.abs(dw - du))))
    checks.append(Check("matches exact profile", err <= tol, f"max difference {err:.2e}"))

    amp = 3 / (2 * math.pi)
    lv, ld = amp * math.sin(GP * 1.5), amp * GP * math.cos(GP * 1.5)
    rv, rd = -math.cos(GM * -0.5) / math.pi, math.sin(GM * -0.5)
    err = max(abs(lv - rv), abs(ld - rd))
    checks.append(Check("C1 join at 1/2", err <= tol,
                        f"values {lv:.3e}/{rv:.3e}, slopes {ld:.15f}/{rd:.15f}"))

    u1 = float(boundary_eigenfunction(1.0)[0])
    rhs = -2 / 3 * float(boundary_eigenfunction(-0.25)[0])
    err = max(abs(u1 + 1 / math.pi), abs(rhs + 1 / math.pi))
    checks.append(Check("boundary condition at 1", err <= tol,
                        f"u(1)={u1:.15f}, -(2/3)u(-1/4)={rhs:.15f}, -1/pi={-1 / math.pi:.15f}"))
    res = gamma(p, 1.0, -1.0, 1.0, [-0.25], [-2 / 3])
    checks.append(Check("residual at 1 vanishes", abs(res) <= tol, f"{res:.2e}"))

    d1 = float(boundary_eigenfunction(1.0)[1])
    checks.append(Check("derivative vanishes at 1", abs(d1) <= tol, f"u'(1)={d1:.2e}"))
    try:
        nodal_class(p, 1.0, -1.0)
        on_edge = False
    except BoundaryCriticalPoint:
        on_edge = True
    checks.append(Check("classified on nodal-class boundary", on_edge,
                        "BoundaryCriticalPoint raised" if on_edge else "classified"))
    return checks


def missing_class_scan(eps=0.05, s_max=200.0):
    spec = ProblemSpec((), (), (-0.5,), (0.0,), allow_outside_cone=True)
    hits = scan_branch_roots(spec, (math.pi / 2 + eps) ** 2, eps**-2, s_max)
    bad = [h for h in hits if h.k == 2 and h.nu == 1]
    return Check("no (2,+) half-eigenvalue", not bad,
                 f"{len(hits)} roots in (0, {s_max:g}], {len(bad)} of class (2,+)")


def run_all():
    return boundary_eigenfunction_checks() + [missing_class_scan()]
