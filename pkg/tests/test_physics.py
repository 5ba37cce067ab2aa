#!/usr/bin/env python3

import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import numpy as np
import pytest

from bprk.core.errors import DomainError, VacuumError
from bprk.physics.equations import Burgers, Euler, LinearAdvection
from bprk.physics.euler import (admissible_mask, conservative_to_primitive, entropy_functions,
                                entropy_integral, euler_flux, pressure, primitive_to_conservative,
                                psi_tilde)
from bprk.physics.riemann import PrimitiveState, exact_riemann, max_wave_speed, star_region

SOD_LEFT = PrimitiveState(1.0, 0.0, 1.0)
SOD_RIGHT = PrimitiveState(0.125, 0.0, 0.1)


# ==== Euler ====

def test_primitive_round_trip():
    rng = np.random.default_rng(21)
    q = np.stack([rng.uniform(0.1, 3.0, 100), rng.normal(size=100), rng.normal(size=100),
                  rng.uniform(0.1, 3.0, 100)])
    np.testing.assert_allclose(conservative_to_primitive(primitive_to_conservative(q)), q, rtol=1e-12, atol=1e-12)


def test_pressure_and_flux():
    u = primitive_to_conservative(np.array([[2.0], [0.5], [1.0]]))
    assert pressure(u)[0] == pytest.approx(1.0)
    flux = euler_flux(u)
    np.testing.assert_allclose(flux[:, 0], [1.0, 2.0 * 0.25 + 1.0, (u[2, 0] + 1.0) * 0.5])


def test_flux_rejects_inadmissible_state():
    with pytest.raises(DomainError):
        euler_flux(np.array([[-1.0], [0.0], [1.0]]))
    assert not admissible_mask(np.array([[1.0], [2.0], [1.0]]))[0]


def test_entropy_functions():
    u = primitive_to_conservative(np.array([[1.0, 0.5], [0.0, 0.0], [1.0, 2.0]]))
    funcs = entropy_functions(u)
    np.testing.assert_allclose(funcs.psi_tilde, psi_tilde(u))
    np.testing.assert_allclose(funcs.psi, np.log(funcs.psi_tilde) / 0.4)
    np.testing.assert_allclose(funcs.sigma, -u[0] * np.log(funcs.psi))
    assert entropy_integral(u, 0.5) == pytest.approx(0.5 * np.sum(funcs.sigma))


def test_entropy_integral_undefined_when_psi_not_positive():
    # e rho^-gamma < 1 da psi < 0
    u = primitive_to_conservative(np.array([[1.0], [0.0], [0.2]]))
    assert entropy_functions(u).sigma is None
    assert entropy_integral(u, 1.0) is None


def test_equations():
    u = np.array([[1.0, -2.0]])
    np.testing.assert_allclose(LinearAdvection(3.0).flux(u), 3.0 * u)
    np.testing.assert_allclose(Burgers().flux(u), [[0.5, 2.0]])
    euler = Euler(2)
    assert euler.components == 4 and euler.is_euler
    assert not Burgers().is_euler


# ==== Riemann ====

def test_sod_star_region():
    print("=" * 70)
    print("TEST: SOD STAR REGION")
    print("=" * 70)
    solution = exact_riemann(SOD_LEFT, SOD_RIGHT)
    print(f"   {solution}")
    assert solution.p_star == pytest.approx(0.30313, abs=1e-5)
    assert solution.u_star == pytest.approx(0.92745, abs=1e-5)
    assert solution.right_speed == pytest.approx(1.75216, abs=1e-4)
    assert solution.left_speed == pytest.approx(-np.sqrt(1.4), abs=1e-12)


def test_sod_sampling():
    solution = exact_riemann(SOD_LEFT, SOD_RIGHT)
    rho, v, p = solution.sample(np.array([-2.0, 0.5, 1.2, 2.0]))
    np.testing.assert_allclose(rho, [1.0, 0.42632, 0.26557, 0.125], atol=1e-4)
    np.testing.assert_allclose(v[1:3], solution.u_star, atol=1e-12)
    np.testing.assert_allclose(p[[0, 3]], [1.0, 0.1])


def test_rarefaction_fan_is_continuous():
    solution = exact_riemann(SOD_LEFT, SOD_RIGHT)
    head, tail = SOD_LEFT.v - np.sqrt(1.4), solution.left_tail_speed
    rho, _, _ = solution.sample(np.array([head - 1e-9, head + 1e-9, tail - 1e-9, tail + 1e-9]))
    assert rho[0] == pytest.approx(rho[1], abs=1e-6)
    assert rho[2] == pytest.approx(rho[3], abs=1e-6)


def test_star_region_vectorized_and_symmetric():
    p, u = star_region([1.0, 0.125], [0.0, 0.0], [1.0, 0.1], [0.125, 1.0], [0.0, 0.0], [0.1, 1.0])
    assert p[0] == pytest.approx(p[1], rel=1e-10)
    assert u[0] == pytest.approx(-u[1], rel=1e-10)


def test_two_shock_collision():
    left = PrimitiveState(1.0, 1.0, 1.0)
    right = PrimitiveState(1.0, -1.0, 1.0)
    solution = exact_riemann(left, right)
    assert solution.u_star == pytest.approx(0.0, abs=1e-12)
    assert solution.p_star > 1.0
    assert solution.left_tail_speed == solution.left_speed


def test_max_wave_speed_of_equal_states():
    c = np.sqrt(1.4)
    np.testing.assert_allclose(max_wave_speed(1.0, 0.5, 1.0, 1.0, 0.5, 1.0), 0.5 + c, rtol=1e-10)


def test_vacuum_and_bad_data():
    with pytest.raises(VacuumError):
        star_region(1.0, -10.0, 1.0, 1.0, 10.0, 1.0)
    with pytest.raises(DomainError):
        star_region(-1.0, 0.0, 1.0, 1.0, 0.0, 1.0)


def test_sod_waves_satisfy_jump_conditions():
    solution = exact_riemann(SOD_LEFT, SOD_RIGHT)
    eps = 1e-9
    s = solution.right_speed
    rho, v, p = solution.sample(np.array([s - eps, s + eps]))
    # Rankine-Hugoniot en el marco del choque
    mass = rho * (v - s)
    assert mass[0] == pytest.approx(mass[1], rel=1e-8)
    momentum = rho * (v - s) ** 2 + p
    assert momentum[0] == pytest.approx(momentum[1], rel=1e-8)
    # rarefaccion isentropica
    tail = solution.left_tail_speed
    rho, _, p = solution.sample(np.array([-2.0, 0.5 * (tail - np.sqrt(1.4)), tail + eps]))
    np.testing.assert_allclose(p / rho ** 1.4, 1.0, rtol=1e-8)
