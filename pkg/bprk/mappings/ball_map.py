"""Elliptic map between the open disk of radius r0 and the open square (-1, 1)^2."""

import numpy as np

from ..core.errors import DomainError, first_node

SQRT2 = np.sqrt(2.0)
INSIDE = 1.0 - 8.0 * np.finfo(float).eps


def _radicands(x, y):
    delta = x * x - y * y
    return (2.0 + delta + 2.0 * SQRT2 * x, 2.0 + delta - 2.0 * SQRT2 * x,
            2.0 - delta + 2.0 * SQRT2 * y, 2.0 - delta - 2.0 * SQRT2 * y)


def _unit_coordinates(u, r0, strict=True):
    u = np.asarray(u, dtype=float)
    x, y = u[0] / r0, u[1] / r0
    if strict:
        outside = ~(x * x + y * y < 1.0)
        if np.any(outside):
            raise DomainError(f"Ball map needs ||u|| < r0 (node {first_node(outside)})")
    return x, y


def _checked_radicands(x, y, strict=True):
    radicands = _radicands(x, y)
    negative = np.zeros(np.shape(x), dtype=bool)
    for r in radicands:
        negative |= r < 0.0
    if np.any(negative):
        if strict:
            node = first_node(negative)
            values = [float(r) if np.ndim(r) == 0 else float(np.asarray(r)[node]) for r in radicands]
            raise DomainError(f"Negative radicand in ball map at node {node}: {values}")
        radicands = tuple(np.maximum(r, 0.0) for r in radicands)
    return radicands


def ball2_to_cube(u, r0, strict=True):
    x, y = _unit_coordinates(u, r0, strict)
    ap, am, bp, bm = _checked_radicands(x, y, strict)
    return np.stack([0.5 * np.sqrt(ap) - 0.5 * np.sqrt(am),
                     0.5 * np.sqrt(bp) - 0.5 * np.sqrt(bm)])


def cube_to_ball2(z, r0):
    z = np.asarray(z, dtype=float)
    z1, z2 = z[0], z[1]
    return np.stack([r0 * z1 * np.sqrt(1.0 - 0.5 * z2 * z2),
                     r0 * z2 * np.sqrt(1.0 - 0.5 * z1 * z1)])


def ball2_to_cube_jvp(u, r0, v, strict=True):
    """Jacobian of ball2_to_cube at u applied to v (r0 held fixed)."""
    x, y = _unit_coordinates(u, r0, strict)
    ap, am, bp, bm = _checked_radicands(x, y, strict)
    tiny = np.finfo(float).tiny
    sap, sam = np.sqrt(np.maximum(ap, tiny)), np.sqrt(np.maximum(am, tiny))
    sbp, sbm = np.sqrt(np.maximum(bp, tiny)), np.sqrt(np.maximum(bm, tiny))

    d1dx = 0.25 * (2.0 * x + 2.0 * SQRT2) / sap - 0.25 * (2.0 * x - 2.0 * SQRT2) / sam
    d1dy = 0.25 * (-2.0 * y) / sap - 0.25 * (-2.0 * y) / sam
    d2dx = 0.25 * (-2.0 * x) / sbp - 0.25 * (-2.0 * x) / sbm
    d2dy = 0.25 * (2.0 * y + 2.0 * SQRT2) / sbp - 0.25 * (2.0 * y - 2.0 * SQRT2) / sbm

    v = np.asarray(v, dtype=float)
    dx, dy = v[0] / r0, v[1] / r0
    return np.stack([d1dx * dx + d1dy * dy, d2dx * dx + d2dy * dy])


def pull_inside(p, r0):
    """Scale the points whose norm rounds onto the circle back into the open disk."""
    p = np.asarray(p, dtype=float)
    norm = np.hypot(p[0], p[1])
    limit = INSIDE * r0
    scale = np.where(norm > limit, limit / np.maximum(norm, np.finfo(float).tiny), 1.0)
    return p * scale
