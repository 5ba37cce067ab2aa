"""Per-node admissible sets.

Every field of a set is an array that broadcasts against the node axes of a state
``u`` of shape (m, *grid); plain floats work for single states. A set is open: the
bounds themselves are not admissible, except for frozen (degenerate) interval
components.
"""

import numpy as np

from ..core.errors import DomainError, first_node

DEGENERATE_WIDTH = 1e-14


class AdmissibleSet:
    kind = "abstract"

    def widen(self, eps):
        return self

    def violations(self, u):
        """List of (constraint name, per-node mask of violating nodes)."""
        return []

    def contains(self, u):
        u = np.asarray(u, dtype=float)
        ok = np.ones(u.shape[1:], dtype=bool)
        for _, bad in self.violations(u):
            ok &= ~bad
        return ok

    def slack(self, u):
        return np.full(np.asarray(u).shape[1:], np.inf)

    def require(self, u, what="state"):
        u = np.asarray(u, dtype=float)
        for name, bad in self.violations(u):
            if np.any(bad):
                raise DomainError(f"{what} outside {self.kind} set at node {first_node(bad)}: {name}")


class Unbounded(AdmissibleSet):
    kind = "unbounded"

    def __repr__(self):
        return "Unbounded()"


class OneSided(AdmissibleSet):
    kind = "one-sided"

    def __init__(self, lower):
        self.lower = np.asarray(lower, dtype=float)

    def violations(self, u):
        bad = np.any(~(u > self.lower), axis=0)
        return [("u > a", bad)]

    def slack(self, u):
        return np.min(u - self.lower, axis=0)

    def __repr__(self):
        return f"OneSided(lower~{np.min(self.lower):.4g})"


class Interval(AdmissibleSet):
    kind = "interval"

    def __init__(self, lower, upper):
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        if np.any(self.upper < self.lower):
            raise DomainError("Interval with upper bound below lower bound")

    @property
    def frozen(self):
        return (self.upper - self.lower) < DEGENERATE_WIDTH

    def widen(self, eps):
        if eps <= 0:
            return self
        pad = eps * np.maximum(1.0, self.upper - self.lower)
        return Interval(self.lower - pad, self.upper + pad)

    def violations(self, u):
        frozen = self.frozen
        open_ok = (u > self.lower) & (u < self.upper)
        closed_ok = (u >= self.lower) & (u <= self.upper)
        ok = np.where(frozen, closed_ok, open_ok)
        return [("a < u < b", np.any(~ok, axis=0))]

    def slack(self, u):
        gap = np.minimum(u - self.lower, self.upper - u)
        gap = np.where(self.frozen & (gap >= 0.0), np.inf, gap)
        return np.min(gap, axis=0)

    def __repr__(self):
        return f"Interval(lower~{np.min(self.lower):.4g}, upper~{np.max(self.upper):.4g})"


class Ball2(AdmissibleSet):
    """Open disk ||(u_i, u_j)|| < r0 on two components; the others are free."""
    kind = "ball2"

    def __init__(self, radius, components=(0, 1)):
        self.radius = np.asarray(radius, dtype=float)
        self.components = tuple(components)
        if np.any(self.radius <= 0.0):
            raise DomainError("Ball2 radius must be positive")

    def _norm(self, u):
        i, j = self.components
        return np.hypot(u[i], u[j])

    def violations(self, u):
        return [("||u|| < r0", ~(self._norm(u) < self.radius))]

    def slack(self, u):
        return self.radius - self._norm(u)

    def __repr__(self):
        return f"Ball2(r0~{np.min(self.radius):.4g}, components={self.components})"


class EulerIDP(AdmissibleSet):
    """Density interval plus the specific-entropy floor e > rho^gamma * psi_tilde_min."""
    kind = "euler-idp"

    def __init__(self, rho_min, rho_max, psi_tilde_min, gamma_gas=1.4):
        self.rho_min = np.asarray(rho_min, dtype=float)
        self.rho_max = np.asarray(rho_max, dtype=float)
        self.psi_tilde_min = np.asarray(psi_tilde_min, dtype=float)
        self.gamma_gas = float(gamma_gas)
        if np.any(self.rho_min < 0.0) or np.any(self.rho_max < self.rho_min):
            raise DomainError("EulerIDP needs 0 <= rho_min <= rho_max")
        if np.any(self.psi_tilde_min < 0.0):
            raise DomainError("EulerIDP needs psi_tilde_min >= 0")

    @property
    def frozen_density(self):
        return (self.rho_max - self.rho_min) < DEGENERATE_WIDTH

    def widen(self, eps):
        if eps <= 0:
            return self
        pad = eps * np.maximum(1.0, self.rho_max - self.rho_min)
        psi = self.psi_tilde_min - eps * np.maximum(1.0, self.psi_tilde_min)
        return EulerIDP(np.maximum(self.rho_min - pad, 0.0), self.rho_max + pad,
                        np.maximum(psi, 0.0), self.gamma_gas)

    def entropy_floor(self, rho):
        """Smallest admissible internal energy at density rho."""
        return np.maximum(rho, 0.0) ** self.gamma_gas * self.psi_tilde_min

    def floor_derivative(self, rho):
        g = self.gamma_gas
        return g * np.maximum(rho, 0.0) ** (g - 1.0) * self.psi_tilde_min

    def with_room(self, u, room, density_room=0.0):
        """Copy that leaves the admissible state u at least ``room`` internal energy above the
        entropy floor and ``density_room`` inside the density interval, node by node."""
        rho, mom, energy = split_euler(u)
        internal = energy - 0.5 * np.sum(mom ** 2, axis=0) / rho
        cap = (internal - room) / rho ** self.gamma_gas
        psi = np.maximum(np.minimum(self.psi_tilde_min, cap), 0.0)
        rho_min = np.maximum(np.minimum(self.rho_min, rho - density_room), 0.0)
        rho_max = np.maximum(self.rho_max, rho + density_room)
        return EulerIDP(rho_min, rho_max, psi, self.gamma_gas)

    def violations(self, u):
        rho, mom, energy = split_euler(u)
        rho_open = (rho > self.rho_min) & (rho < self.rho_max)
        rho_closed = (rho >= self.rho_min) & (rho <= self.rho_max)
        rho_ok = np.where(self.frozen_density, rho_closed, rho_open) & (rho > 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            internal = energy - 0.5 * np.sum(mom ** 2, axis=0) / rho
            energy_ok = rho_ok & (internal > self.entropy_floor(rho))
        return [("rho_min < rho < rho_max", ~rho_ok),
                ("E > rho^gamma psi_min + |rho v|^2 / (2 rho)", ~energy_ok)]

    def slack(self, u):
        rho, mom, energy = split_euler(u)
        density_gap = np.minimum(rho - self.rho_min, self.rho_max - rho)
        density_gap = np.where(self.frozen_density & (density_gap >= 0.0), np.inf, density_gap)
        # rho*e - rho^(gamma+1) psi_min: mismo signo que e - rho^gamma psi_min para rho > 0
        rho_pos = np.maximum(rho, 0.0)
        energy_gap = rho * energy - 0.5 * np.sum(mom ** 2, axis=0) - rho_pos * self.entropy_floor(rho)
        return np.minimum(density_gap, energy_gap)

    def __repr__(self):
        return (f"EulerIDP(rho~[{np.min(self.rho_min):.4g}, {np.max(self.rho_max):.4g}], "
                f"psi_min~{np.min(self.psi_tilde_min):.4g}, gamma={self.gamma_gas})")


def split_euler(u):
    """(rho, momentum[d], E) views of an Euler state with m = d + 2 components."""
    u = np.asarray(u, dtype=float)
    return u[0], u[1:-1], u[-1]
