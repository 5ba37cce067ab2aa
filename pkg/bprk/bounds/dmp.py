import numpy as np

from .stencil import Stencil
from ..mappings.admissible_sets import Interval, OneSided


def global_envelope(state):
    """(min, max) per component over the whole grid, shaped to broadcast against the nodes."""
    axes = tuple(range(1, state.values.ndim))
    shape = (state.components,) + (1,) * state.dims
    return (np.min(state.values, axis=axes).reshape(shape),
            np.max(state.values, axis=axes).reshape(shape))


def dmp_bounds(state, stencil=None, envelope=None):
    """Per node and component, [min, max] of the values over the stencil.

    With an ``envelope`` (usually the one of the initial condition) both ends are
    clipped into it, so the widening of every step cannot pile up over time.
    """
    stencil = stencil or Stencil(state.dims)
    pool = stencil.pool(state.values)
    lower, upper = np.min(pool, axis=0), np.max(pool, axis=0)
    if envelope is not None:
        low, high = envelope
        lower, upper = np.clip(lower, low, high), np.clip(upper, low, high)
    return Interval(lower, upper)


def positivity_bounds(state):
    """u > 0 componentwise."""
    return OneSided(np.zeros((state.components,) + (1,) * state.dims))
