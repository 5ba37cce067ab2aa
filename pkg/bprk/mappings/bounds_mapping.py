"""Bounds mappings G: B_i -> R^m for every admissible set variant.

``mapping_for(set, tolerance)`` widens the set by the tolerance and returns the
matching mapping. ``overflow_channels`` marks the components whose inverse is
exponential; those are the ones the stepper guards against overflow.
"""

import logging

import numpy as np

from .admissible_sets import Ball2, EulerIDP, Interval, OneSided, Unbounded, split_euler
from .ball_map import ball2_to_cube, ball2_to_cube_jvp, cube_to_ball2, pull_inside
from .euler_maps import (check_form, euler_jvp_1d, euler_jvp_2d, euler_map_1d, euler_map_2d,
                         euler_unmap_1d, euler_unmap_2d)
from .scalar_maps import (ATANH_CLAMP, one_sided_derivative, safe_atanh, strict_tanh,
                          two_sided_derivative, unmap_one_sided, unmap_two_sided)
from ..core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-6
DEFAULT_EULER_FORM = "energy"
# holgura de energia por unidad de crecimiento dt L esperado en el paso
ROOM_DRIVE_FACTOR = 1.0


class BoundsMapping:
    # solo los conjuntos de Euler ajustan su holgura por nodo
    adapts_room = False
    room = None

    def __init__(self, admissible, tolerance=DEFAULT_TOLERANCE):
        if tolerance < 0:
            raise ConfigError(f"Bounds tolerance must be >= 0, got {tolerance}")
        self.set = admissible
        self.tolerance = tolerance
        self.widened = admissible.widen(tolerance)

    def forward(self, u):
        raise NotImplementedError

    def inverse(self, w):
        raise NotImplementedError

    def jacobian_vecprod(self, u, v, strict=True):
        raise NotImplementedError

    def overflow_channels(self, m):
        return np.zeros(m, dtype=bool)

    def contains(self, u):
        return self.widened.contains(u)

    def __repr__(self):
        return f"{type(self).__name__}({self.widened!r}, tolerance={self.tolerance})"


class IdentityMapping(BoundsMapping):
    def forward(self, u):
        return np.array(u, dtype=float, copy=True)

    def inverse(self, w):
        return np.array(w, dtype=float, copy=True)

    def jacobian_vecprod(self, u, v, strict=True):
        return np.array(v, dtype=float, copy=True)


class OneSidedMapping(BoundsMapping):
    def forward(self, u):
        self.widened.require(u)
        return np.log(np.asarray(u, dtype=float) - self.widened.lower)

    def inverse(self, w):
        return unmap_one_sided(np.asarray(w, dtype=float), self.widened.lower)

    def jacobian_vecprod(self, u, v, strict=True):
        if strict:
            self.widened.require(u)
        return one_sided_derivative(u, self.widened.lower, strict=False) * np.asarray(v, dtype=float)

    def overflow_channels(self, m):
        return np.ones(m, dtype=bool)


class IntervalMapping(BoundsMapping):
    """Componentwise atanh map; frozen components map to 0 and back to the midpoint."""

    def _safe_upper(self):
        s = self.widened
        return np.where(s.frozen, s.lower + 1.0, s.upper)

    def forward(self, u):
        s = self.widened
        s.require(u)
        u = np.asarray(u, dtype=float)
        x = 2.0 * (u - s.lower) / (self._safe_upper() - s.lower) - 1.0
        return np.where(s.frozen, 0.0, safe_atanh(x))

    def inverse(self, w):
        s = self.widened
        u = unmap_two_sided(np.asarray(w, dtype=float), s.lower, s.upper)
        return np.where(s.frozen, 0.5 * (s.lower + s.upper), u)

    def jacobian_vecprod(self, u, v, strict=True):
        s = self.widened
        if strict:
            s.require(u)
        slope = two_sided_derivative(u, s.lower, self._safe_upper(), strict=False)
        return np.where(s.frozen, 0.0, slope * np.asarray(v, dtype=float))


class Ball2Mapping(BoundsMapping):
    """atanh of the elliptic disk-to-square map on the two disk components; identity elsewhere."""

    def forward(self, u):
        s = self.widened
        s.require(u)
        w = np.array(u, dtype=float, copy=True)
        i, j = s.components
        z = ball2_to_cube(np.stack([w[i], w[j]]), s.radius)
        w[i], w[j] = safe_atanh(z[0]), safe_atanh(z[1])
        return w

    def inverse(self, w):
        s = self.widened
        u = np.array(w, dtype=float, copy=True)
        i, j = s.components
        p = pull_inside(cube_to_ball2(strict_tanh(np.stack([u[i], u[j]])), s.radius), s.radius)
        u[i], u[j] = p[0], p[1]
        return u

    def jacobian_vecprod(self, u, v, strict=True):
        s = self.widened
        if strict:
            s.require(u)
        i, j = s.components
        out = np.array(v, dtype=float, copy=True)
        pair = np.stack([np.asarray(u, dtype=float)[i], np.asarray(u, dtype=float)[j]])
        z = ball2_to_cube(pair, s.radius, strict=False)
        dz = ball2_to_cube_jvp(pair, s.radius, np.stack([out[i], out[j]]), strict=False)
        zc = np.clip(z, -ATANH_CLAMP, ATANH_CLAMP)
        out[i], out[j] = dz[0] / (1.0 - zc[0] ** 2), dz[1] / (1.0 - zc[1] ** 2)
        return out


class EulerMapping(BoundsMapping):
    """Euler invariant-set map; ``form`` picks the energy channel (see euler_maps).

    With a ``reference`` state (u^n) the widened set is also given per-node room:
    at least the tolerance above the entropy floor and inside the density interval,
    plus enough room for the growth that each of the ``drives`` (dt L at u^n or at
    a stage) asks from the exponential channel, and never less than ``room_floor``.
    """
    adapts_room = True

    def __init__(self, admissible, tolerance=DEFAULT_TOLERANCE, dims=1, form=DEFAULT_EULER_FORM,
                 reference=None, drives=(), room_floor=None):
        super().__init__(admissible, tolerance)
        if dims not in (1, 2):
            raise ConfigError(f"Euler mapping supports 1 or 2 dimensions, got {dims}")
        self.dims = dims
        self.form = check_form(form)
        if reference is not None:
            room = self.required_room(reference)
            for drive in drives:
                room = np.maximum(room, self.required_room(reference, drive))
            if room_floor is not None:
                room = np.maximum(room, room_floor)
            self.room = room
            self.widened = self.widened.with_room(reference, room, density_room=tolerance)

    def required_room(self, u, drive=None):
        """Internal energy each node of u keeps above the (widened) entropy floor."""
        rho, mom, _ = split_euler(u)
        eps = self.tolerance
        speed = np.sqrt(np.sum(mom ** 2, axis=0))
        # |m| queda al menos eps dentro del disco de radio sqrt(2 rho q)
        room = np.maximum(eps, eps * (2.0 * speed + eps) / (2.0 * rho))
        if drive is None:
            return room
        d_rho, d_mom, d_energy = split_euler(drive)
        dq = d_energy - self.widened.floor_derivative(rho) * d_rho
        if self.form == "energy":
            kinetic = 0.5 * np.sum(mom ** 2, axis=0) / rho
            return np.maximum(room, ROOM_DRIVE_FACTOR * np.maximum(dq, 0.0) - kinetic)
        v = mom / rho
        d_slack = dq - np.sum(v * d_mom, axis=0) + 0.5 * np.sum(v ** 2, axis=0) * d_rho
        tangential = np.sum(d_mom ** 2, axis=0) / (2.0 * rho)
        return np.maximum(np.maximum(room, ROOM_DRIVE_FACTOR * np.maximum(d_slack, 0.0)), tangential)

    def forward(self, u):
        fn = euler_map_1d if self.dims == 1 else euler_map_2d
        return fn(u, self.widened, form=self.form)

    def inverse(self, w):
        fn = euler_unmap_1d if self.dims == 1 else euler_unmap_2d
        return fn(w, self.widened, form=self.form)

    def jacobian_vecprod(self, u, v, strict=True):
        fn = euler_jvp_1d if self.dims == 1 else euler_jvp_2d
        return fn(u, self.widened, v, strict=strict, form=self.form)

    def overflow_channels(self, m):
        channels = np.ones(m, dtype=bool)
        channels[0] = False
        if self.form == "energy":
            # el momento vuelve por tanh
            channels[1:-1] = False
        return channels

    def __repr__(self):
        return f"EulerMapping({self.widened!r}, tolerance={self.tolerance}, form={self.form})"


MAPPING_TYPES = {
    Unbounded: IdentityMapping,
    OneSided: OneSidedMapping,
    Interval: IntervalMapping,
    Ball2: Ball2Mapping,
}


def mapping_for(admissible, tolerance=DEFAULT_TOLERANCE, components=None, euler_form=DEFAULT_EULER_FORM,
                reference=None, drives=(), room_floor=None):
    """Mapping of the widened set; ``reference``, ``drives`` and ``room_floor`` only shape Euler sets."""
    if isinstance(admissible, EulerIDP):
        dims = 1 if components in (None, 3) else components - 2
        return EulerMapping(admissible, tolerance, dims=dims, form=euler_form, reference=reference,
                            drives=drives, room_floor=room_floor)
    for set_type, mapping_type in MAPPING_TYPES.items():
        if isinstance(admissible, set_type):
            return mapping_type(admissible, tolerance)
    raise ConfigError(f"No mapping for admissible set {admissible!r}")


def jacobian_vecprod(mapping, u, v):
    """G'(u) v with closed-form derivatives; u must lie strictly inside the widened set."""
    return mapping.jacobian_vecprod(u, v, strict=True)
