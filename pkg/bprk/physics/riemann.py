"""Exact Riemann solver for the one-dimensional Euler equations of an ideal gas.

Star-region pressure by Newton iteration on the pressure function, the usual
adaptive initial guess, and sampling of the self-similar solution. Every routine
works elementwise on arrays so that all cell faces of a grid are solved at once.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .euler import GAMMA_GAS
from ..core.errors import DomainError, VacuumError, first_node

logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-12
NEWTON_MAX_ITER = 100
PVRS_RATIO = 2.0


@dataclass
class PrimitiveState:
    rho: float
    v: float
    p: float


class _Gas:
    def __init__(self, gamma):
        self.gamma = gamma
        self.g1 = (gamma - 1.0) / (2.0 * gamma)
        self.g2 = (gamma + 1.0) / (2.0 * gamma)
        self.g3 = 2.0 * gamma / (gamma - 1.0)
        self.g4 = 2.0 / (gamma - 1.0)
        self.g5 = 2.0 / (gamma + 1.0)
        self.g6 = (gamma - 1.0) / (gamma + 1.0)
        self.g7 = (gamma - 1.0) / 2.0


def _check_data(rho, p, side):
    bad = ~((rho > 0.0) & (p > 0.0))
    if np.any(bad):
        raise DomainError(f"Riemann {side} state needs rho > 0 and p > 0 (node {first_node(bad)})")


def _guess_pressure(dl, ul, pl, cl, dr, ur, pr, cr, gas):
    cup = 0.25 * (dl + dr) * (cl + cr)
    ppv = np.maximum(0.0, 0.5 * (pl + pr) + 0.5 * (ul - ur) * cup)
    pmin = np.minimum(pl, pr)
    pmax = np.maximum(pl, pr)

    # dos rarefacciones
    pq = (pl / pr) ** gas.g1
    um = (pq * ul / cl + ur / cr + gas.g4 * (pq - 1.0)) / (pq / cl + 1.0 / cr)
    ptl = 1.0 + gas.g7 * (ul - um) / cl
    ptr = 1.0 + gas.g7 * (um - ur) / cr
    two_rarefaction = 0.5 * (pl * np.maximum(ptl, 0.0) ** gas.g3 + pr * np.maximum(ptr, 0.0) ** gas.g3)

    # dos choques con PVRS como estimacion
    gel = np.sqrt((gas.g5 / dl) / (gas.g6 * pl + ppv))
    ger = np.sqrt((gas.g5 / dr) / (gas.g6 * pr + ppv))
    two_shock = (gel * pl + ger * pr - (ur - ul)) / (gel + ger)

    use_pvrs = (pmax / pmin <= PVRS_RATIO) & (pmin <= ppv) & (ppv <= pmax)
    guess = np.where(use_pvrs, ppv, np.where(ppv < pmin, two_rarefaction, two_shock))
    fallback = 0.5 * (pl + pr)
    return np.where(np.isfinite(guess) & (guess > 0.0), guess, fallback)


def _pressure_function(p, dk, pk, ck, gas):
    ratio = p / pk
    f_raref = gas.g4 * ck * (ratio ** gas.g1 - 1.0)
    fd_raref = (1.0 / (dk * ck)) * ratio ** (-gas.g2)

    ak = gas.g5 / dk
    bk = gas.g6 * pk
    qrt = np.sqrt(ak / (bk + p))
    f_shock = (p - pk) * qrt
    fd_shock = (1.0 - 0.5 * (p - pk) / (bk + p)) * qrt

    rarefaction = p <= pk
    return np.where(rarefaction, f_raref, f_shock), np.where(rarefaction, fd_raref, fd_shock)


def star_region(dl, ul, pl, dr, ur, pr, gamma_gas=GAMMA_GAS):
    """Star pressure and velocity for arrays of left/right primitive data."""
    dl, ul, pl, dr, ur, pr = (np.asarray(x, dtype=float) for x in (dl, ul, pl, dr, ur, pr))
    _check_data(dl, pl, "left")
    _check_data(dr, pr, "right")
    gas = _Gas(gamma_gas)
    cl = np.sqrt(gamma_gas * pl / dl)
    cr = np.sqrt(gamma_gas * pr / dr)

    vacuum = gas.g4 * (cl + cr) <= (ur - ul)
    if np.any(vacuum):
        raise VacuumError(f"Riemann data generate vacuum (node {first_node(vacuum)})")

    p_old = _guess_pressure(dl, ul, pl, cl, dr, ur, pr, cr, gas)
    du = ur - ul
    done = np.zeros(np.shape(p_old), dtype=bool)
    for iteration in range(NEWTON_MAX_ITER):
        fl, fld = _pressure_function(p_old, dl, pl, cl, gas)
        fr, frd = _pressure_function(p_old, dr, pr, cr, gas)
        p = p_old - (fl + fr + du) / (fld + frd)
        p = np.where(p < 0.0, NEWTON_TOLERANCE, p)
        change = 2.0 * np.abs((p - p_old) / (p + p_old))
        p_old = np.where(done, p_old, p)
        done |= change <= NEWTON_TOLERANCE
        if np.all(done):
            break
    else:
        logger.warning("Newton iteration for the star pressure did not converge at %d faces",
                       int(np.size(done) - np.count_nonzero(done)))
    logger.debug("Star pressure converged in %d iterations", iteration + 1)

    fl, _ = _pressure_function(p_old, dl, pl, cl, gas)
    fr, _ = _pressure_function(p_old, dr, pr, cr, gas)
    u_star = 0.5 * (ul + ur) + 0.5 * (fr - fl)
    return p_old, u_star


def outer_wave_speeds(dl, ul, pl, dr, ur, pr, p_star, gamma_gas=GAMMA_GAS):
    """Leftmost and rightmost signal speeds of the Riemann fan."""
    gas = _Gas(gamma_gas)
    cl = np.sqrt(gamma_gas * pl / dl)
    cr = np.sqrt(gamma_gas * pr / dr)
    left = np.where(p_star > pl, ul - cl * np.sqrt(gas.g2 * p_star / pl + gas.g1), ul - cl)
    right = np.where(p_star > pr, ur + cr * np.sqrt(gas.g2 * p_star / pr + gas.g1), ur + cr)
    return left, right


def max_wave_speed(dl, ul, pl, dr, ur, pr, gamma_gas=GAMMA_GAS):
    p_star, _ = star_region(dl, ul, pl, dr, ur, pr, gamma_gas)
    left, right = outer_wave_speeds(dl, ul, pl, dr, ur, pr, p_star, gamma_gas)
    return np.maximum(np.abs(left), np.abs(right))


class RiemannSolution:
    def __init__(self, left, right, gamma_gas, p_star, u_star):
        self.left = left
        self.right = right
        self.gamma_gas = gamma_gas
        self.p_star = float(p_star)
        self.u_star = float(u_star)
        s_left, s_right = outer_wave_speeds(left.rho, left.v, left.p, right.rho, right.v, right.p,
                                            self.p_star, gamma_gas)
        self.left_speed = float(s_left)
        self.right_speed = float(s_right)
        self.lambda_max = max(abs(self.left_speed), abs(self.right_speed))

    @property
    def left_tail_speed(self):
        """Tail of the left rarefaction (equals the left speed for a shock)."""
        if self.p_star > self.left.p:
            return self.left_speed
        c = np.sqrt(self.gamma_gas * self.left.p / self.left.rho)
        return self.u_star - c * (self.p_star / self.left.p) ** _Gas(self.gamma_gas).g1

    @property
    def right_tail_speed(self):
        if self.p_star > self.right.p:
            return self.right_speed
        c = np.sqrt(self.gamma_gas * self.right.p / self.right.rho)
        return self.u_star + c * (self.p_star / self.right.p) ** _Gas(self.gamma_gas).g1

    def sample(self, xi):
        """Primitive (rho, v, p) of the self-similar solution at xi = x / t."""
        gas = _Gas(self.gamma_gas)
        xi = np.asarray(xi, dtype=float)
        L, R = self.left, self.right
        pm, um = self.p_star, self.u_star
        cl = np.sqrt(self.gamma_gas * L.p / L.rho)
        cr = np.sqrt(self.gamma_gas * R.p / R.rho)

        rho = np.empty_like(xi)
        vel = np.empty_like(xi)
        prs = np.empty_like(xi)

        def put(mask, d, u, p):
            rho[mask] = np.broadcast_to(d, xi.shape)[mask]
            vel[mask] = np.broadcast_to(u, xi.shape)[mask]
            prs[mask] = np.broadcast_to(p, xi.shape)[mask]

        left_side = xi <= um
        if pm <= L.p:
            head = L.v - cl
            tail = um - cl * (pm / L.p) ** gas.g1
            put(left_side & (xi <= head), L.rho, L.v, L.p)
            put(left_side & (xi > tail), L.rho * (pm / L.p) ** (1.0 / self.gamma_gas), um, pm)
            fan = left_side & (xi > head) & (xi <= tail)
            c = gas.g5 * (cl + gas.g7 * (L.v - xi))
            put(fan, L.rho * (c / cl) ** gas.g4, gas.g5 * (cl + gas.g7 * L.v + xi), L.p * (c / cl) ** gas.g3)
        else:
            pml = pm / L.p
            shock = L.v - cl * np.sqrt(gas.g2 * pml + gas.g1)
            put(left_side & (xi <= shock), L.rho, L.v, L.p)
            put(left_side & (xi > shock), L.rho * (pml + gas.g6) / (pml * gas.g6 + 1.0), um, pm)

        right_side = ~left_side
        if pm > R.p:
            pmr = pm / R.p
            shock = R.v + cr * np.sqrt(gas.g2 * pmr + gas.g1)
            put(right_side & (xi >= shock), R.rho, R.v, R.p)
            put(right_side & (xi < shock), R.rho * (pmr + gas.g6) / (pmr * gas.g6 + 1.0), um, pm)
        else:
            head = R.v + cr
            tail = um + cr * (pm / R.p) ** gas.g1
            put(right_side & (xi >= head), R.rho, R.v, R.p)
            put(right_side & (xi <= tail), R.rho * (pm / R.p) ** (1.0 / self.gamma_gas), um, pm)
            fan = right_side & (xi < head) & (xi > tail)
            c = gas.g5 * (cr - gas.g7 * (R.v - xi))
            put(fan, R.rho * (c / cr) ** gas.g4, gas.g5 * (-cr + gas.g7 * R.v + xi), R.p * (c / cr) ** gas.g3)

        return rho, vel, prs

    def __repr__(self):
        return (f"RiemannSolution(p*={self.p_star:.6g}, u*={self.u_star:.6g}, "
                f"lambda_max={self.lambda_max:.6g})")


def exact_riemann(left, right, gamma_gas=GAMMA_GAS):
    p_star, u_star = star_region(left.rho, left.v, left.p, right.rho, right.v, right.p, gamma_gas)
    return RiemannSolution(left, right, gamma_gas, p_star, u_star)
