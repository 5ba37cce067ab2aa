#!/usr/bin/env python3

import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import numpy as np
import pytest

from bprk.core.grid_state import Grid, GridState
from bprk.physics.equations import Burgers, Euler, LinearAdvection
from bprk.spectral.fourier import flux_divergence, semidiscrete_operator, spectral_derivative, wavenumbers


def test_wavenumbers_nyquist_zeroed():
    k = wavenumbers(8)
    assert k[4] == 0.0
    np.testing.assert_allclose(k[1], 2j * np.pi)
    np.testing.assert_allclose(k[-1], -2j * np.pi)
    assert wavenumbers(7)[3] != 0.0


def test_derivative_of_sine_is_exact():
    x = np.arange(32) / 32
    np.testing.assert_allclose(spectral_derivative(np.sin(2 * np.pi * x)), 2 * np.pi * np.cos(2 * np.pi * x),
                               atol=1e-12)


def test_derivative_on_longer_domain():
    grid = Grid(16, [(-1.0, 1.0)], offset=0.5)
    x = grid.coordinates(0)
    np.testing.assert_allclose(spectral_derivative(np.sin(np.pi * x), length=2.0), np.pi * np.cos(np.pi * x),
                               atol=1e-12)


def test_nyquist_mode_has_zero_derivative():
    field = np.cos(np.pi * np.arange(8))
    np.testing.assert_allclose(spectral_derivative(field), 0.0, atol=1e-13)


def test_constant_has_zero_derivative():
    np.testing.assert_allclose(spectral_derivative(np.full(16, 3.0)), 0.0, atol=1e-13)


def test_derivative_along_second_axis():
    grid = Grid(16, [(0.0, 1.0), (0.0, 1.0)])
    x, y = grid.mesh()
    field = np.sin(2 * np.pi * y)[np.newaxis]
    np.testing.assert_allclose(spectral_derivative(field, axis=2), 2 * np.pi * np.cos(2 * np.pi * y)[np.newaxis],
                               atol=1e-11)
    np.testing.assert_allclose(spectral_derivative(field, axis=1), 0.0, atol=1e-11)


def test_too_few_nodes():
    with pytest.raises(ValueError):
        spectral_derivative(np.zeros(1))


def test_advection_operator_is_minus_derivative():
    grid = Grid(32, [(0.0, 1.0)])
    x = grid.coordinates(0)
    state = GridState(grid, np.sin(2 * np.pi * x))
    L = flux_divergence(state, LinearAdvection(2.0))
    np.testing.assert_allclose(L[0], -4 * np.pi * np.cos(2 * np.pi * x), atol=1e-11)


def test_operator_conserves_mass():
    print("=" * 70)
    print("TEST: SPECTRAL OPERATOR CONSERVES MASS")
    print("=" * 70)
    grid = Grid(64, [(0.0, 1.0)])
    x = grid.coordinates(0)
    rhs = semidiscrete_operator(grid, Burgers())
    L = rhs((np.sin(2 * np.pi * x) + 2.0)[np.newaxis], 0.0)
    print(f"   sum L = {np.sum(L):.3e}")
    assert abs(np.sum(L) * grid.weight) < 1e-12


def test_euler_operator_uniform_flow():
    grid = Grid(8, [(0.0, 1.0), (0.0, 1.0)])
    values = np.zeros((4,) + grid.shape)
    values[0], values[1], values[2], values[3] = 1.0, 0.3, -0.2, 2.5
    L = flux_divergence(GridState(grid, values), Euler(2))
    np.testing.assert_allclose(L, 0.0, atol=1e-13)


def test_derivative_is_linear():
    rng = np.random.default_rng(16)
    f, g = rng.normal(size=32), rng.normal(size=32)
    np.testing.assert_allclose(spectral_derivative(2.0 * f - 3.0 * g),
                               2.0 * spectral_derivative(f) - 3.0 * spectral_derivative(g), atol=1e-11)


def test_spectral_convergence_for_smooth_periodic_field():
    errors = []
    for n in (8, 16, 32, 64):
        x = np.arange(n) / n
        exact = 2 * np.pi * np.cos(2 * np.pi * x) * np.exp(np.sin(2 * np.pi * x))
        errors.append(float(np.max(np.abs(spectral_derivative(np.exp(np.sin(2 * np.pi * x))) - exact))))
    print(f"   errors = {['%.2e' % e for e in errors]}")
    assert errors[1] < 1e-3 * errors[0]
    assert errors[2] < 1e-11 and errors[3] < 1e-11
