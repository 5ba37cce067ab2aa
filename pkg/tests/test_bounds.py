#!/usr/bin/env python3

import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import numpy as np
import pytest

from bprk.bounds.dmp import dmp_bounds, global_envelope, positivity_bounds
from bprk.bounds.idp import face_wave_speed, idp_auxiliary_state, idp_bounds
from bprk.bounds.stencil import Stencil
from bprk.core.errors import DomainError
from bprk.core.grid_state import Grid, GridState
from bprk.physics.euler import admissible_mask, primitive_to_conservative, psi_tilde
from bprk.problems.library import ic_library


def scalar_state(values):
    values = np.asarray(values, dtype=float)
    return GridState(Grid(len(values), [(0.0, 1.0)]), values[np.newaxis])


def test_stencil_1d():
    print("=" * 70)
    print("TEST: STENCIL")
    print("=" * 70)
    stencil = Stencil(1)
    print(f"   {stencil}")
    assert stencil.size == 3
    assert stencil.indices(0, (8,)) == [0, 7, 1]
    assert stencil.indices(7, (8,)) == [7, 6, 0]
    values = np.arange(8.0)[np.newaxis]
    left, right = stencil.neighbors(values)
    assert left[0, 0] == 7.0 and right[0, 0] == 1.0


def test_stencil_2d():
    stencil = Stencil(2)
    assert stencil.size == 5
    indices = stencil.indices((0, 3), (4, 4))
    assert sorted(indices) == sorted([(0, 3), (3, 3), (1, 3), (0, 2), (0, 0)])
    assert stencil.pool(np.zeros((4, 4, 4))).shape == (5, 4, 4, 4)
    with pytest.raises(ValueError):
        Stencil(3)


def test_dmp_bounds():
    bounds = dmp_bounds(scalar_state([0.0, 1.0, 2.0, 3.0]))
    np.testing.assert_allclose(bounds.lower[0], [0.0, 0.0, 1.0, 0.0])
    np.testing.assert_allclose(bounds.upper[0], [3.0, 2.0, 3.0, 3.0])
    assert np.all((bounds.lower[0] <= np.arange(4.0)) & (np.arange(4.0) <= bounds.upper[0]))


def test_dmp_bounds_flat_region_is_frozen():
    bounds = dmp_bounds(scalar_state([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]))
    assert bounds.frozen[0, 1]
    assert not bounds.frozen[0, 3]
    assert np.all(bounds.contains(np.zeros((1, 8))) == bounds.frozen[0])


def test_global_envelope():
    low, high = global_envelope(scalar_state([0.5, -1.0, 2.0, 0.0]))
    assert low.shape == high.shape == (1, 1)
    assert low[0, 0] == -1.0 and high[0, 0] == 2.0


def test_dmp_bounds_clipped_to_envelope():
    # la sobreelevacion de un paso no entra en las cotas del siguiente
    state = scalar_state([0.0, 1.0 + 1e-7, 0.5, 0.0])
    envelope = (np.zeros((1, 1)), np.ones((1, 1)))
    bounds = dmp_bounds(state, envelope=envelope)
    np.testing.assert_allclose(bounds.upper[0], [1.0, 1.0, 1.0, 0.5])
    np.testing.assert_allclose(bounds.lower[0], [0.0, 0.0, 0.0, 0.0])
    widened = bounds.widen(1e-6)
    assert np.all(widened.upper <= 1.0 + 1e-6)


def test_positivity_bounds():
    bounds = positivity_bounds(scalar_state([1.0, 2.0]))
    assert bounds.lower.shape == (1, 1)
    assert np.all(bounds.contains(np.array([[1e-12, 3.0]])))
    assert not np.any(bounds.contains(np.array([[0.0, -1.0]])))


def random_pairs(rng, size=1000):
    def state():
        q = np.stack([rng.uniform(0.1, 2.0, size), rng.uniform(-0.5, 0.5, size), rng.uniform(0.05, 3.0, size)])
        return primitive_to_conservative(q)
    return state(), state()


def test_auxiliary_states_are_admissible():
    rng = np.random.default_rng(11)
    u_i, u_j = random_pairs(rng)
    lam = face_wave_speed(u_i, u_j)
    aux = idp_auxiliary_state(u_i, u_j, [1.0], lam)
    assert np.all(admissible_mask(aux))
    rho_lo = np.minimum(u_i[0], u_j[0])
    assert np.all(aux[0] > 0.0) and np.all(lam > 0.0)
    print(f"   min aux density / min pair density = {np.min(aux[0] / rho_lo):.4f}")


def test_auxiliary_state_of_equal_states():
    q = np.array([[1.0], [0.3], [1.0]])
    u = primitive_to_conservative(q)
    np.testing.assert_allclose(idp_auxiliary_state(u, u, [1.0], np.array([2.0])), u)
    with pytest.raises(DomainError):
        idp_auxiliary_state(u, u, [1.0], np.array([0.0]))


def test_idp_bounds_constant_state():
    grid = Grid(8, [(0.0, 1.0)])
    u = primitive_to_conservative(np.tile(np.array([[1.0], [0.5], [1.0]]), (1, 8)))
    bounds = idp_bounds(GridState(grid, u))
    np.testing.assert_allclose(bounds.rho_min, 1.0)
    np.testing.assert_allclose(bounds.rho_max, 1.0)
    np.testing.assert_allclose(bounds.psi_tilde_min, psi_tilde(u), rtol=1e-12)
    assert np.all(bounds.frozen_density)


def test_idp_bounds_contain_nodes_sod():
    state = ic_library("sod").initial_state(16)
    bounds = idp_bounds(state)
    rho = state.values[0]
    assert np.all(bounds.rho_min <= rho) and np.all(rho <= bounds.rho_max)
    assert np.all(psi_tilde(state.values) >= bounds.psi_tilde_min)
    assert np.all(bounds.rho_min >= 0.125 - 1e-12) and np.all(bounds.rho_max <= 1.0 + 1e-12)
    # los nodos vecinos de la discontinuidad tienen un intervalo de densidad abierto
    assert np.any(bounds.rho_max - bounds.rho_min > 0.1)


def test_idp_bounds_positivity_only():
    state = ic_library("sod").initial_state(16)
    bounds = idp_bounds(state, positivity_only=True)
    assert np.all(bounds.psi_tilde_min == 0.0)


def test_idp_bounds_2d():
    state = ic_library("riemann2d_case12").initial_state(8)
    bounds = idp_bounds(state)
    assert bounds.rho_min.shape == state.grid.shape
    assert np.all(bounds.rho_min > 0.0)


def test_idp_bounds_reject_inadmissible_state():
    state = ic_library("sod").initial_state(8)
    values = state.values.copy()
    values[0, 3] = -1.0
    with pytest.raises(DomainError):
        idp_bounds(state.with_values(values))
