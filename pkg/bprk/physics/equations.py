"""Conservation laws u_t + div F(u) = 0 supplied to the spectral operator."""

import numpy as np

from .euler import GAMMA_GAS, admissible_mask, euler_flux


def advection_flux(u, c=1.0):
    return c * np.asarray(u, dtype=float)


def burgers_flux(u):
    u = np.asarray(u, dtype=float)
    return 0.5 * u * u


class Equation:
    name = "equation"
    components = 1
    dims = 1
    is_euler = False

    def flux(self, values, axis=0):
        raise NotImplementedError

    def admissible(self, values):
        """Per-node physical admissibility; scalar laws accept any finite value."""
        return np.all(np.isfinite(values), axis=0)

    def __repr__(self):
        return f"{type(self).__name__}()"


class LinearAdvection(Equation):
    name = "advection"

    def __init__(self, c=1.0):
        self.c = float(c)

    def flux(self, values, axis=0):
        return advection_flux(values, self.c)

    def __repr__(self):
        return f"LinearAdvection(c={self.c})"


class Burgers(Equation):
    name = "burgers"

    def flux(self, values, axis=0):
        return burgers_flux(values)


class Euler(Equation):
    name = "euler"
    is_euler = True

    def __init__(self, dims=1, gamma_gas=GAMMA_GAS):
        self.dims = int(dims)
        self.components = self.dims + 2
        self.gamma_gas = float(gamma_gas)

    def flux(self, values, axis=0):
        return euler_flux(values, axis, self.gamma_gas, check=False)

    def admissible(self, values):
        return admissible_mask(values)

    def __repr__(self):
        return f"Euler(dims={self.dims}, gamma_gas={self.gamma_gas})"
