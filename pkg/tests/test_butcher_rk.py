#!/usr/bin/env python3

import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import numpy as np
import pytest

from bprk.core.errors import ConfigError, PropagationError
from bprk.core.grid_state import Grid, GridState
from bprk.rk.butcher import TABLEAUX, ButcherTableau, builtin_tableau
from bprk.rk.stepper import StageWorkspace, rk_step


def decay_state(value=1.0):
    grid = Grid(2, [(0.0, 1.0)])
    return GridState(grid, np.full((1, 2), value), 0.0)


def integrate_decay(scheme, dt, t_end=1.0):
    tab = builtin_tableau(scheme)
    state = decay_state()
    rhs = lambda values, t: -values
    for _ in range(int(round(t_end / dt))):
        state = rk_step(state, rhs, tab, dt)
    return state


def test_builtin_tableaux_are_explicit_and_consistent():
    print("=" * 70)
    print("TEST: BUTCHER TABLEAUX")
    print("=" * 70)
    for name in TABLEAUX:
        tab = builtin_tableau(name)
        print(f"   {tab}")
        assert np.all(np.triu(tab.A) == 0.0)
        assert tab.b.sum() == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(tab.A.sum(axis=1), tab.c, atol=1e-15)


def test_rk4_coefficients():
    tab = builtin_tableau("RK4")
    np.testing.assert_allclose(tab.b, [1 / 6, 1 / 3, 1 / 3, 1 / 6])
    assert tab.A[3, 2] == 1.0
    assert tab.stages == 4


def test_unknown_scheme():
    with pytest.raises(ConfigError):
        builtin_tableau("rk9")


def test_implicit_tableau_rejected():
    with pytest.raises(ConfigError):
        ButcherTableau("implicit", [[0.5]], [1.0], [0.5])


def test_inconsistent_tableau_rejected():
    with pytest.raises(ConfigError):
        ButcherTableau("bad", [[0.0, 0.0], [1.0, 0.0]], [0.5, 0.25], [0.0, 1.0])


@pytest.mark.parametrize("scheme,order", [("rk1", 1), ("rk2", 2), ("rk3", 3), ("rk4", 4)])
def test_order_on_linear_decay(scheme, order):
    exact = np.exp(-1.0)
    errors = [abs(integrate_decay(scheme, dt).values[0, 0] - exact) for dt in (0.1, 0.05)]
    observed = np.log2(errors[0] / errors[1])
    print(f"   {scheme}: errors {errors}, observed order {observed:.3f}")
    assert abs(observed - order) < 0.15


def test_step_advances_time():
    state = integrate_decay("rk3", 0.25)
    assert state.time == pytest.approx(1.0)


def test_non_positive_dt():
    with pytest.raises(ValueError):
        rk_step(decay_state(), lambda v, t: -v, builtin_tableau("rk2"), 0.0)


def test_non_finite_rhs_raises_propagation_error():
    with pytest.raises(PropagationError):
        rk_step(decay_state(), lambda v, t: v * np.nan, builtin_tableau("rk2"), 0.1)


def test_workspace_shape_check():
    work = StageWorkspace(2, (1, 4))
    with pytest.raises(ValueError):
        work.record(0, np.zeros((1, 4)), np.zeros((1, 3)))
    work.record(0, np.zeros((1, 4)), np.ones((1, 4)))
    np.testing.assert_allclose(work.combine(np.zeros((1, 4)), [0.5], 2.0), np.ones((1, 4)))
