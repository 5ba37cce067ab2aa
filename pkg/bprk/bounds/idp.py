"""Invariant-domain bounds for the Euler equations.

Between every pair of face neighbours the averaged Riemann state

    U_ij = (u_i + u_j) / 2 - (d_ij / (2 lambda_max)) . (F(u_j) - F(u_i))

is formed with lambda_max from the exact Riemann solver on the normal velocity.
The density extrema and the minimum of psi_tilde = e rho^(-gamma) over u_i and its
averaged states give the per-node EulerIDP set.
"""

import numpy as np

from .stencil import Stencil
from ..core.errors import DomainError, first_node
from ..mappings.admissible_sets import EulerIDP, split_euler
from ..physics.euler import GAMMA_GAS, euler_flux, pressure, psi_tilde, require_admissible
from ..physics.riemann import max_wave_speed


def _directional_flux(u, direction, gamma_gas):
    return sum(d * euler_flux(u, axis, gamma_gas, check=False) for axis, d in enumerate(direction) if d != 0.0)


def idp_auxiliary_state(u_i, u_j, direction, lambda_max, gamma_gas=GAMMA_GAS):
    """Riemann-average state between u_i and u_j along the unit vector ``direction``."""
    u_i = np.asarray(u_i, dtype=float)
    u_j = np.asarray(u_j, dtype=float)
    lambda_max = np.asarray(lambda_max, dtype=float)
    bad = ~(lambda_max > 0.0)
    if np.any(bad):
        raise DomainError(f"Auxiliary state needs lambda_max > 0 (node {first_node(bad)})")
    direction = np.atleast_1d(np.asarray(direction, dtype=float))
    jump = _directional_flux(u_j, direction, gamma_gas) - _directional_flux(u_i, direction, gamma_gas)
    return 0.5 * (u_i + u_j) - jump / (2.0 * lambda_max)


def face_wave_speed(u_left, u_right, axis=0, gamma_gas=GAMMA_GAS):
    """Largest wave speed of the Riemann problem across faces normal to ``axis``."""
    rho_l, mom_l, _ = split_euler(u_left)
    rho_r, mom_r, _ = split_euler(u_right)
    return max_wave_speed(rho_l, mom_l[axis] / rho_l, pressure(u_left, gamma_gas),
                          rho_r, mom_r[axis] / rho_r, pressure(u_right, gamma_gas), gamma_gas)


def _face_states(values, axis, gamma_gas):
    """U_{i,i+1} stored at node i."""
    right = np.roll(values, -1, axis=axis + 1)
    direction = np.zeros(values.shape[0] - 2)
    direction[axis] = 1.0
    lam = face_wave_speed(values, right, axis, gamma_gas)
    return idp_auxiliary_state(values, right, direction, lam, gamma_gas)


def idp_bounds(state, stencil=None, gamma_gas=GAMMA_GAS, positivity_only=False):
    """Per-node EulerIDP sets from {u_i} and the averaged states of its face neighbours."""
    values = state.values
    require_admissible(values, "state for IDP bounds")
    stencil = stencil or Stencil(state.dims)

    faces = {axis: _face_states(values, axis, gamma_gas) for axis in range(state.dims)}
    pool = [values]
    for axis, shift in stencil.offsets:
        face = faces[axis]
        pool.append(face if shift == -1 else np.roll(face, 1, axis=axis + 1))

    densities = np.stack([p[0] for p in pool])
    rho_min = np.maximum(np.min(densities, axis=0), 0.0)
    rho_max = np.max(densities, axis=0)
    if positivity_only:
        psi_min = np.zeros_like(rho_min)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            surrogates = np.stack([np.where(p[0] > 0.0, psi_tilde(p, gamma_gas), 0.0) for p in pool])
        psi_min = np.maximum(np.nan_to_num(np.min(surrogates, axis=0), nan=0.0), 0.0)
    return EulerIDP(rho_min, rho_max, psi_min, gamma_gas)
