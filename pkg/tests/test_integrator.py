import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from halfeig.bvp_shoot.integrator import (Trajectory, integrate, integrate_many,
                                          make_grid, sample_at)
from halfeig.errors import BlowUp
from halfeig.jumping_profile import make_profile, w_eval


def jumping(a, b, lam=1.0):
    def rhs(x, u):
        return lam * (a * np.maximum(u, 0.0) - b * np.maximum(-u, 0.0))
    return rhs


def test_quadratic():
    tr = integrate(lambda x, u: np.ones_like(u), 0.0, 1.0, 0.01)
    assert np.max(np.abs(tr.values - (1 - tr.grid**2) / 2)) < 1e-10


def test_sine_endpoint():
    tr = integrate(jumping(1, 1), 0.0, 1.0, 1e-3)
    assert abs(tr.values[-1] - math.sin(2.0)) <= 1e-8


def test_fourth_order():
    errs = []
    for step in (0.04, 0.02, 0.01):
        tr = integrate(jumping(1, 1, 9.0), 0.3, 1.0, step)
        g = 3.0
        exact = 0.3 * math.cos(2 * g) + math.sin(2 * g) / g
        errs.append(abs(tr.values[-1] - exact))
    assert errs[0] / errs[1] >= 12 and errs[1] / errs[2] >= 12


def test_jumping_profile():
    p = make_profile(2, 1)
    c, d = w_eval(p, 1.0, 0.0, -1.0)
    tr = integrate(jumping(4, 1), c, d, 0.01)
    v, dv = w_eval(p, 1.0, 0.0, tr.grid)
    assert np.max(np.abs(tr.values - v)) < 1e-7
    assert np.max(np.abs(tr.derivatives - dv)) < 1e-7


@settings(max_examples=25)
@given(st.floats(0.3, 3), st.floats(0.3, 3), st.floats(0.5, 8), st.floats(-4, 4))
def test_jumping_profile_random(gp, gm, s, delta):
    p = make_profile(gp, gm)
    c, d = w_eval(p, s, delta, -1.0)
    omega = s * max(gp, gm)
    tr = integrate(jumping(gp**2, gm**2, s * s), c, d, min(0.01, 0.02 / omega))
    v, _ = w_eval(p, s, delta, tr.grid)
    amp = 1.0 / min(gp, gm)
    assert np.max(np.abs(tr.values - v)) < 1e-7 * amp


def test_kink_splitting_preserves_order():
    # without splitting at u = 0 the error ratio would collapse to about 4
    p = make_profile(3, 1)
    c, d = w_eval(p, 4.0, 0.7, -1.0)
    errs = []
    for step in (0.02, 0.01, 0.005):
        tr = integrate(jumping(9, 1, 16.0), c, d, step)
        errs.append(np.max(np.abs(tr.values - w_eval(p, 4.0, 0.7, tr.grid)[0])))
    assert errs[0] / errs[1] >= 12 and errs[1] / errs[2] >= 12


def test_blowup():
    with pytest.raises(BlowUp):
        integrate(lambda x, u: -1e8 * u, 1.0, 0.0, 0.01)


def test_batch_matches_single():
    cs = np.array([0.0, 1.0, -2.0])
    ds = np.array([1.0, -0.5, 3.0])
    grid, U, V = integrate_many(jumping(4, 1, 2.0), cs, ds, 0.01, (0.3,))
    for i in range(3):
        tr = integrate(jumping(4, 1, 2.0), cs[i], ds[i], 0.01, (0.3,))
        assert np.array_equal(tr.values, U[i]) and np.array_equal(tr.derivatives, V[i])


def test_batch_args_are_sliced():
    def rhs(x, u, lam):
        return lam * u
    lams = np.array([1.0, 4.0])
    grid, U, _ = integrate_many(rhs, [0.0, 0.0], [1.0, 1.0], 0.005, args=(lams,))
    for i, lam in enumerate(lams):
        g = math.sqrt(lam)
        assert U[i, -1] == pytest.approx(math.sin(2 * g) / g, abs=1e-8)


def test_grid():
    g = make_grid(0.1, (0.333, 2.0))
    assert g[0] == -1 and g[-1] == 1 and 0.333 in g and len(g) == 22
    with pytest.raises(ValueError):
        make_grid(0.0)


def test_sample_at_hermite():
    tr = integrate(lambda x, u: np.ones_like(u), 0.0, 1.0, 0.1)
    for x in (-1.0, -0.35, 0.123, 1.0):
        assert tr.value_at(x) == pytest.approx((1 - x * x) / 2, abs=1e-12)
    U = tr.values[None, :]
    assert sample_at(tr.grid, U, tr.derivatives[None, :], tr.grid[5])[0] == U[0, 5]


def test_trajectory_nodal_class():
    x = np.linspace(-1, 1, 201)
    u = np.sin(math.pi * (x + 1))
    du = math.pi * np.cos(math.pi * (x + 1))
    tr = Trajectory(x, u, du)
    assert tr.nodal_class() == (2, 1)
    assert Trajectory(x, -u, -du).nodal_class() == (2, -1)
    flat = Trajectory(x, np.cos(math.pi * x / 2), -math.pi / 2 * np.sin(math.pi * x / 2))
    assert flat.nodal_class() == (1, 1)
    edge = Trajectory(x, np.cos(math.pi * (x + 1)), -np.pi * np.sin(math.pi * (x + 1)))
    assert edge.nodal_class() == (None, 0)
