"""Fourier pseudospectral differentiation on periodic equispaced grids.

Fluxes are formed pointwise in physical space and differentiated in Fourier space.
There is no dealiasing.
"""

import numpy as np

from ..core.errors import PropagationError, first_node
from ..core.grid_state import GridState

IMAG_TOLERANCE = 1e-12


def wavenumbers(n, length=1.0):
    """Multipliers i 2 pi k / L in numpy's FFT ordering, Nyquist mode zeroed for even n."""
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return 1j * 2.0 * np.pi * k / length


def spectral_derivative(field, axis=0, length=1.0):
    field = np.asarray(field, dtype=float)
    n = field.shape[axis]
    if n < 2:
        raise ValueError(f"Spectral derivative needs at least 2 nodes, got {n}")

    shape = [1] * field.ndim
    shape[axis] = n
    multiplier = wavenumbers(n, length).reshape(shape)

    result = np.fft.ifft(multiplier * np.fft.fft(field, axis=axis), axis=axis)
    scale = max(1.0, float(np.max(np.abs(result.real))) if result.size else 1.0)
    imag = float(np.max(np.abs(result.imag))) if result.size else 0.0
    if not imag < IMAG_TOLERANCE * scale:
        raise PropagationError(f"Spectral derivative left an imaginary part of {imag:.3e}")
    return result.real


def flux_divergence(state, equation):
    """L(u) = -sum over axes of D_axis(F_axis(u)) for a GridState."""
    values = state.values
    lengths = state.grid.lengths
    result = np.zeros_like(values)
    for axis in range(state.dims):
        flux = equation.flux(values, axis)
        bad = ~np.all(np.isfinite(flux), axis=0)
        if np.any(bad):
            raise PropagationError("Non-finite flux", node=first_node(bad))
        # eje 0 del arreglo son las componentes
        result -= spectral_derivative(flux, axis=axis + 1, length=lengths[axis])
    return result


def semidiscrete_operator(grid, equation):
    """Build rhs(values, t) -> L for the stepper."""
    def rhs(values, t):
        return flux_divergence(GridState(grid, values, t), equation)

    return rhs
