"""Bijections between the Euler invariant set and R^m, in one and two space dimensions.

Channel layout of the auxiliary vector w:
  1D: [density (atanh), momentum (atanh of the scaled momentum), energy (log)]
  2D: [density (atanh), momentum x/y (disk -> square -> atanh), energy (log)]

Two forms share the density and momentum channels and differ in the energy one:
  "slack":  log(E - rho^gamma psi_min - |m|^2 / (2 rho)); the momentum comes back
            through sinh, unbounded for a fixed slack.
  "energy": log(E - rho^gamma psi_min); the momentum comes back through tanh and
            stays inside the disk of radius sqrt(2 rho (E - rho^gamma psi_min)).
"""

import numpy as np

from .admissible_sets import split_euler
from .ball_map import ball2_to_cube, ball2_to_cube_jvp, cube_to_ball2, pull_inside
from .scalar_maps import ATANH_CLAMP, safe_atanh, strict_tanh, two_sided_derivative, unmap_two_sided
from ..core.errors import ConfigError

TINY = np.finfo(float).tiny
EULER_FORMS = ("energy", "slack")


def check_form(form):
    if form not in EULER_FORMS:
        raise ConfigError(f"Unknown Euler map form '{form}'. Available: {', '.join(EULER_FORMS)}")
    return form


def _density_forward(rho, bounds):
    frozen = bounds.frozen_density
    span = np.where(frozen, 1.0, bounds.rho_max - bounds.rho_min)
    x = 2.0 * (rho - bounds.rho_min) / span - 1.0
    return np.where(frozen, 0.0, safe_atanh(x))


def _density_inverse(w1, bounds):
    mid = 0.5 * (bounds.rho_min + bounds.rho_max)
    return np.where(bounds.frozen_density, mid, unmap_two_sided(w1, bounds.rho_min, bounds.rho_max))


def _density_jvp(rho, bounds, drho):
    frozen = bounds.frozen_density
    rho_max = np.where(frozen, bounds.rho_min + 1.0, bounds.rho_max)
    slope = two_sided_derivative(rho, bounds.rho_min, rho_max, strict=False)
    return np.where(frozen, 0.0, slope * drho)


def _energy_slack(rho, mom, energy, bounds):
    """q = E - rho^gamma psi_min (energy above the entropy floor) and e_s = q - |m|^2 / (2 rho)."""
    q = energy - bounds.entropy_floor(rho)
    return q, q - 0.5 * np.sum(mom ** 2, axis=0) / rho


def _energy_channel(q, slack, form):
    return np.log(np.maximum(slack if form == "slack" else q, TINY))


def _atanh_slope(x):
    x = np.clip(x, -ATANH_CLAMP, ATANH_CLAMP)
    return 1.0 / (1.0 - x * x)


def _rebuild_energy(rho, mom, slack, bounds):
    """E = floor + kinetic + slack, with the slack never lost to rounding."""
    base = bounds.entropy_floor(rho) + 0.5 * np.sum(mom ** 2, axis=0) / rho
    return base + np.maximum(slack, 4.0 * np.spacing(base))


def _resolved(x, energy):
    return np.maximum(x, np.maximum(np.spacing(np.abs(energy)), TINY))


def _energy_channel_jvp(q, slack, dq, dslack, form):
    if form == "slack":
        return dslack / slack
    return dq / q


# ==== 1D ====

def euler_map_1d(u, bounds, strict=True, form="slack"):
    check_form(form)
    if strict:
        bounds.require(u, "Euler state")
    rho, mom, energy = split_euler(u)
    q, slack = _energy_slack(rho, mom, energy, bounds)
    r = np.sqrt(2.0 * rho * np.maximum(q, TINY))
    return np.stack([_density_forward(rho, bounds),
                     safe_atanh(mom[0] / r),
                     _energy_channel(q, slack, form)])


def euler_unmap_1d(w, bounds, form="slack"):
    check_form(form)
    w = np.asarray(w, dtype=float)
    rho = _density_inverse(w[0], bounds)
    zeta3 = np.exp(w[2])
    if form == "slack":
        # sgn(zeta2) sqrt(2 rho zeta2^2 zeta3 / (1 - zeta2^2)) con zeta2 = tanh(w2) es sinh(w2) sqrt(2 rho zeta3)
        mom = np.sinh(w[1]) * np.sqrt(2.0 * rho * zeta3)
        slack = zeta3
    else:
        zeta2 = strict_tanh(w[1])
        mom = zeta2 * np.sqrt(2.0 * rho * zeta3)
        slack = zeta3 * (1.0 - zeta2) * (1.0 + zeta2)
    energy = _rebuild_energy(rho, mom[None], slack, bounds)
    return np.stack([rho, mom, energy])


def euler_jvp_1d(u, bounds, v, strict=True, form="slack"):
    check_form(form)
    if strict:
        bounds.require(u, "Euler state")
    rho, mom, energy = split_euler(u)
    m = mom[0]
    v = np.asarray(v, dtype=float)
    drho, dm, denergy = v[0], v[1], v[2]

    rho = np.maximum(rho, TINY)
    q, slack = _energy_slack(rho, mom, energy, bounds)
    # nivel de redondeo de E: la holgura puede perderse frente a la energia cinetica
    q, slack = _resolved(q, energy), _resolved(slack, energy)
    dq = denergy - bounds.floor_derivative(rho) * drho

    r = np.sqrt(2.0 * rho * q)
    dr = (q * drho + rho * dq) / r
    dx = dm / r - m * dr / (r * r)
    dslack = dq - m * dm / rho + 0.5 * m * m / (rho * rho) * drho

    return np.stack([_density_jvp(rho, bounds, drho),
                     _atanh_slope(m / r) * dx,
                     _energy_channel_jvp(q, slack, dq, dslack, form)])


# ==== 2D ====

def euler_map_2d(u, bounds, strict=True, form="slack"):
    check_form(form)
    if strict:
        bounds.require(u, "Euler state")
    rho, mom, energy = split_euler(u)
    q, slack = _energy_slack(rho, mom, energy, bounds)
    r0 = np.sqrt(2.0 * rho * np.maximum(q, TINY))
    # la pertenencia al conjunto ya fija |m| < r0; el redondeo puede dejarlo sobre el borde
    z = ball2_to_cube(pull_inside(mom / r0, 1.0), 1.0, strict=False)
    return np.stack([_density_forward(rho, bounds),
                     safe_atanh(z[0]),
                     safe_atanh(z[1]),
                     _energy_channel(q, slack, form)])


def euler_unmap_2d(w, bounds, form="slack"):
    check_form(form)
    w = np.asarray(w, dtype=float)
    rho = _density_inverse(w[0], bounds)
    zeta = np.exp(w[3])
    z = strict_tanh(w[1:3])
    p = pull_inside(cube_to_ball2(z, 1.0), 1.0)
    # 1 - |p|^2 = (1 - z1^2)(1 - z2^2)
    inside = (1.0 - z[0]) * (1.0 + z[0]) * (1.0 - z[1]) * (1.0 + z[1])
    if form == "slack":
        r0 = np.sqrt(2.0 * rho * zeta) * np.cosh(w[1]) * np.cosh(w[2])
        slack = zeta
    else:
        r0 = np.sqrt(2.0 * rho * zeta)
        slack = zeta * inside
    mom = r0 * p
    energy = _rebuild_energy(rho, mom, slack, bounds)
    return np.stack([rho, mom[0], mom[1], energy])


def euler_jvp_2d(u, bounds, v, strict=True, form="slack"):
    check_form(form)
    if strict:
        bounds.require(u, "Euler state")
    rho, mom, energy = split_euler(u)
    v = np.asarray(v, dtype=float)
    drho, dmom, denergy = v[0], v[1:3], v[3]

    rho = np.maximum(rho, TINY)
    q, slack = _energy_slack(rho, mom, energy, bounds)
    # nivel de redondeo de E: la holgura puede perderse frente a la energia cinetica
    q, slack = _resolved(q, energy), _resolved(slack, energy)
    dq = denergy - bounds.floor_derivative(rho) * drho

    r0 = np.sqrt(2.0 * rho * q)
    dr0 = (q * drho + rho * dq) / r0
    p = pull_inside(mom / r0, 1.0)
    dp = dmom / r0 - mom * dr0 / (r0 * r0)
    z = ball2_to_cube(p, 1.0, strict=False)
    dz = ball2_to_cube_jvp(p, 1.0, dp, strict=False)
    dslack = dq - np.sum(mom * dmom, axis=0) / rho + 0.5 * np.sum(mom ** 2, axis=0) / (rho * rho) * drho

    return np.stack([_density_jvp(rho, bounds, drho),
                     _atanh_slope(z[0]) * dz[0],
                     _atanh_slope(z[1]) * dz[1],
                     _energy_channel_jvp(q, slack, dq, dslack, form)])
