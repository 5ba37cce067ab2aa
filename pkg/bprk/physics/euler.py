"""Compressible Euler equations for an ideal gas, conservative layout [rho, rho v (d), E]."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import DomainError, first_node
from ..mappings.admissible_sets import split_euler

GAMMA_GAS = 1.4


def _row(x):
    return np.asarray(x, dtype=float)[np.newaxis]


def internal_energy(u):
    """Internal energy per unit volume e = E - |rho v|^2 / (2 rho)."""
    rho, mom, energy = split_euler(u)
    return energy - 0.5 * np.sum(mom ** 2, axis=0) / rho


def pressure(u, gamma_gas=GAMMA_GAS):
    return (gamma_gas - 1.0) * internal_energy(u)


def admissible_mask(u):
    rho = np.asarray(u, dtype=float)[0]
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = (rho > 0.0) & (internal_energy(u) > 0.0)
    return ok & np.all(np.isfinite(u), axis=0)


def require_admissible(u, what="Euler state"):
    ok = admissible_mask(u)
    if not np.all(ok):
        raise DomainError(f"Inadmissible {what} (rho <= 0 or e <= 0) at node {first_node(~ok)}")


def conservative_to_primitive(u, gamma_gas=GAMMA_GAS):
    rho, mom, _ = split_euler(u)
    return np.concatenate([_row(rho), mom / rho, _row(pressure(u, gamma_gas))])


def primitive_to_conservative(q, gamma_gas=GAMMA_GAS):
    q = np.asarray(q, dtype=float)
    rho, vel, p = q[0], q[1:-1], q[-1]
    energy = p / (gamma_gas - 1.0) + 0.5 * rho * np.sum(vel ** 2, axis=0)
    return np.concatenate([_row(rho), rho * vel, _row(energy)])


def euler_flux(u, axis=0, gamma_gas=GAMMA_GAS, check=True):
    """[rho v_a, rho v_a v + P e_a, (E + P) v_a]."""
    u = np.asarray(u, dtype=float)
    if check:
        require_admissible(u)
    rho, mom, energy = split_euler(u)
    vel_a = mom[axis] / rho
    p = pressure(u, gamma_gas)
    momentum_flux = mom * vel_a
    momentum_flux[axis] = momentum_flux[axis] + p
    return np.concatenate([_row(mom[axis]), momentum_flux, _row((energy + p) * vel_a)])


@dataclass
class EntropyFunctions:
    psi: np.ndarray
    psi_tilde: np.ndarray
    sigma: Optional[np.ndarray]


def psi_tilde(u, gamma_gas=GAMMA_GAS):
    """Exponential entropy surrogate e * rho^(-gamma)."""
    return internal_energy(u) * np.asarray(u, dtype=float)[0] ** (-gamma_gas)


def entropy_functions(u, gamma_gas=GAMMA_GAS):
    """Specific entropy psi, its surrogate psi_tilde and sigma = -rho log(psi).

    sigma is None when psi <= 0 somewhere, where the logarithm is undefined.
    """
    u = np.asarray(u, dtype=float)
    require_admissible(u)
    surrogate = psi_tilde(u, gamma_gas)
    psi = np.log(surrogate) / (gamma_gas - 1.0)
    sigma = None
    if np.all(psi > 0.0):
        sigma = -u[0] * np.log(psi)
    return EntropyFunctions(psi=psi, psi_tilde=surrogate, sigma=sigma)


def entropy_integral(values, weights, gamma_gas=GAMMA_GAS):
    """Domain-integrated sigma, or None where it is undefined."""
    if not np.all(admissible_mask(values)):
        return None
    sigma = entropy_functions(values, gamma_gas).sigma
    if sigma is None:
        return None
    return float(np.sum(weights * sigma))
