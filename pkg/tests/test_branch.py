import math

import numpy as np
import pytest

from halfeig.bvp_shoot import (atan_shift, continue_branch, find_nodal, linear,
                               nodal_condition, rational_bump)
from halfeig.bvp_shoot.families import NonlinearityDescriptor
from halfeig.bvp_shoot.integrator import integrate
from halfeig.bvp_shoot.shooting import boundary_residuals
from halfeig.errors import ConditionFails
from halfeig.residual import ProblemSpec, dirichlet

LAM1 = (math.pi / 2) ** 2
BUMP = rational_bump(10, 1)
THREE_POINT = ProblemSpec([], [], [0.5], [0.0])


@pytest.mark.parametrize("k", [1, 2])
def test_linear_branch_is_vertical(k):
    pts = continue_branch(dirichlet(), linear(1.0), k, 1, max_steps=12)
    lam_k = (k * math.pi / 2) ** 2
    assert all(abs(q.lam - lam_k) < 1e-6 * lam_k for q in pts)
    amps = [q.amplitude for q in pts]
    assert amps[-1] > 100 * amps[0]


def test_bump_branch_rises_to_first_eigenvalue():
    pts = continue_branch(dirichlet(), BUMP, 1, 1, max_steps=200)
    assert pts[0].lam == pytest.approx(LAM1 / 10, rel=1e-6)
    lams = np.array([q.lam for q in pts])
    amps = np.array([q.amplitude for q in pts])
    assert np.all(np.diff(amps) > 0)
    assert np.all(np.diff(lams) > -1e-12)
    assert LAM1 * 0.99 < lams[-1] < LAM1


@pytest.mark.parametrize("spec", [dirichlet(), THREE_POINT])
@pytest.mark.parametrize("k,nu", [(1, 1), (1, -1), (2, 1), (2, -1)])
def test_branch_keeps_nodal_class(spec, k, nu):
    pts = continue_branch(spec, BUMP, k, nu, max_steps=25)
    f = BUMP.f
    for q in pts:
        tr = integrate(lambda x, u, lam=q.lam: lam * f(u), q.c, q.d, 0.01,
                       spec.eta_minus + spec.eta_plus)
        assert tr.nodal_class() == (k, nu)
        assert max(abs(r) for r in boundary_residuals(spec, tr)) <= 1e-8 * (1 + tr.amplitude)


def test_stop_lambda():
    pts = continue_branch(dirichlet(), BUMP, 1, 1, stop_lambda=1.0)
    assert pts[-2].lam < 1.0 <= pts[-1].lam


@pytest.mark.parametrize("nu", [1, -1])
def test_find_nodal_first(nu):
    tr = find_nodal(dirichlet(), BUMP, 1, nu)
    assert tr.nodal_class() == (1, nu)
    assert max(abs(r) for r in boundary_residuals(dirichlet(), tr)) <= 1e-6
    assert np.all(nu * tr.values[1:-1] > 0)
    # a posteriori: the trajectory solves -u'' = f(u) to integration accuracy
    again = integrate(lambda x, u: BUMP.f(u), tr.c, tr.d, 0.005)
    assert abs(again.values[-1]) < 1e-6


def test_find_nodal_second_three_point():
    tr = find_nodal(THREE_POINT, BUMP, 2, 1)
    assert tr.nodal_class() == (2, 1)
    assert max(abs(r) for r in boundary_residuals(THREE_POINT, tr)) <= 1e-6


def test_condition_value():
    assert nodal_condition(dirichlet(), BUMP, 1, 1) == pytest.approx(
        (LAM1 / 10 - 1) * (LAM1 - 1), rel=1e-10)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_linear_f_fails_condition(k):
    with pytest.raises(ConditionFails):
        find_nodal(dirichlet(), linear(1.0), k, 1)


def test_missing_slope_at_zero():
    with pytest.raises(ConditionFails):
        find_nodal(dirichlet(), atan_shift(4, 1), 1, 1)
    with pytest.raises(ConditionFails):
        continue_branch(dirichlet(), atan_shift(4, 1), 1, 1)


def test_sign_condition_checked():
    # dips below zero near u = 2: 2 (1 + 9/5) - 6 < 0
    nl = NonlinearityDescriptor(
        lambda u: u * (1 + 9 / (1 + u * u)) - 3 * u * np.exp(-(u - 2) ** 2), 1.0, 1.0, 10.0)
    with pytest.raises(ConditionFails):
        find_nodal(dirichlet(), nl, 1, 1)
