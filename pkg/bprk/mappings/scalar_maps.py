"""One-sided (log/exp) and two-sided (atanh/tanh) scalar maps.

All functions are elementwise and accept floats or arrays.
"""

import numpy as np

from ..core.errors import DomainError, first_node

ATANH_CLAMP = 1.0 - 1e-15
TANH_LIMIT = np.nextafter(1.0, 0.0)


def safe_atanh(x):
    x = np.clip(x, -ATANH_CLAMP, ATANH_CLAMP)
    return 0.5 * np.log((1.0 + x) / (1.0 - x))


def _as_result(value, like):
    return float(value) if np.ndim(like) == 0 and np.ndim(value) == 0 else value


# ==== ONE-SIDED ====

def map_one_sided(u, a):
    u = np.asarray(u, dtype=float)
    bad = ~(u > a)
    if np.any(bad):
        raise DomainError(f"One-sided map needs u > a (node {first_node(bad)})")
    return _as_result(np.log(u - a), u)


def unmap_one_sided(w, a):
    w = np.asarray(w, dtype=float)
    a = np.asarray(a, dtype=float)
    return _as_result(np.maximum(np.exp(w) + a, np.nextafter(a, np.inf)), w)


def one_sided_derivative(u, a, strict=True):
    u = np.asarray(u, dtype=float)
    gap = u - a
    if strict and np.any(~(gap > 0.0)):
        raise DomainError(f"One-sided Jacobian needs u > a (node {first_node(~(gap > 0.0))})")
    return 1.0 / np.maximum(gap, np.finfo(float).tiny)


# ==== TWO-SIDED ====

def _scaled(u, a, b):
    return 2.0 * (u - a) / (b - a) - 1.0


def map_two_sided(u, a, b):
    u = np.asarray(u, dtype=float)
    bad = ~((u > a) & (u < b))
    if np.any(bad):
        raise DomainError(f"Two-sided map needs a < u < b (node {first_node(bad)})")
    return _as_result(safe_atanh(_scaled(u, a, b)), u)


def strict_tanh(w):
    """tanh kept strictly inside (-1, 1), also where it rounds to +-1."""
    return np.clip(np.tanh(w), -TANH_LIMIT, TANH_LIMIT)


def unmap_two_sided(w, a, b):
    w = np.asarray(w, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    # se evalua desde la cota mas cercana para no perder el intervalo abierto
    t = np.exp(-2.0 * np.abs(w))
    near = (b - a) * t / (1.0 + t)
    u = np.where(w >= 0.0, b - near, a + near)
    u = np.clip(u, np.nextafter(a, b), np.nextafter(b, a))
    return _as_result(u, w)


def two_sided_derivative(u, a, b, strict=True):
    u = np.asarray(u, dtype=float)
    if strict:
        bad = ~((u > a) & (u < b))
        if np.any(bad):
            raise DomainError(f"Two-sided Jacobian needs a < u < b (node {first_node(bad)})")
    x = np.clip(_scaled(u, a, b), -ATANH_CLAMP, ATANH_CLAMP)
    return (2.0 / (b - a)) / (1.0 - x * x)
