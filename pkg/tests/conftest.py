import math
import sys

import numpy as np
from hypothesis import settings, strategies as st

from halfeig.residual import ProblemSpec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@st.composite
def cone_specs(draw, max_nodes=3):
    """Random boundary data with nonnegative coefficients summing below 0.95."""
    sides = {}
    for side in ("minus", "plus"):
        m = draw(st.integers(0, max_nodes))
        raw = draw(st.lists(st.floats(0.01, 1.0), min_size=m, max_size=m))
        total = draw(st.floats(0.0, 0.95))
        alpha = [total * r / sum(raw) for r in raw] if raw else []
        eta = draw(st.lists(st.floats(-0.95, 0.95), min_size=m, max_size=m))
        sides[side] = (alpha, eta)
    return ProblemSpec(sides["minus"][0], sides["minus"][1],
                       sides["plus"][0], sides["plus"][1])


def random_cone_spec(rng, max_nodes=3):
    """numpy-driven counterpart of ``cone_specs`` for fixed-seed loops."""
    out = []
    for _ in range(2):
        m = int(rng.integers(0, max_nodes + 1))
        raw = rng.uniform(0.01, 1.0, m)
        alpha = list(rng.uniform(0.0, 0.95) * raw / raw.sum()) if m else []
        eta = list(rng.uniform(-0.95, 0.95, m))
        out.append((alpha, eta))
    return ProblemSpec(out[0][0], out[0][1], out[1][0], out[1][1])


def rk4_oracle(f, y0, t0, t1, n):
    """Plain fixed-step RK4 for a first-order system, independent of the package."""
    y = np.array(y0, dtype=float)
    h = (t1 - t0) / n
    t = t0
    for _ in range(n):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + h / 2 * k1)
        k3 = f(t + h / 2, y + h / 2 * k2)
        k4 = f(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def bump_length_lambda(gp, gm, k, nu):
    """Dirichlet half-eigenvalue from alternating bump lengths filling [-1, 1]."""
    first, second = (gp, gm) if nu > 0 else (gm, gp)
    j, jj = (k + 1) // 2, k // 2
    s = (j * math.pi / first + jj * math.pi / second) / 2
    return s * s


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
