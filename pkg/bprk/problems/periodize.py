"""Mirror a shock-tube problem on [0, L]^d onto the periodic domain [-L, L]^d."""

from dataclasses import replace

import numpy as np

from ..core.errors import ConfigError

# con el desfase h/2 ningun nodo cae sobre x = 0 ni sobre la discontinuidad
PERIODIZED_OFFSET = 0.5


def mirror_condition(condition, dims):
    """Even extension of the conserved field; the momentum normal to each mirror plane changes sign."""
    def mirrored(*coords):
        values = np.array(condition(*[np.abs(x) for x in coords]), dtype=float)
        for axis, x in enumerate(coords[:dims]):
            values[1 + axis] = np.where(x < 0.0, -values[1 + axis], values[1 + axis])
        return values
    return mirrored


def periodize(spec):
    if not spec.equation.is_euler:
        raise ConfigError(f"Only Euler problems can be periodized by reflection, not '{spec.name}'")
    if spec.periodized:
        return spec
    for lo, _ in spec.extent:
        if lo != 0.0:
            raise ConfigError(f"Periodization mirrors about 0; '{spec.name}' starts at {lo}")
    return replace(spec,
                   extent=[(-hi, hi) for _, hi in spec.extent],
                   initial_condition=mirror_condition(spec.initial_condition, spec.dims),
                   offset=PERIODIZED_OFFSET,
                   periodized=True)
