from dataclasses import dataclass

import numpy as np

from ..core.grid_state import GridState, integrate


@dataclass
class MassDefect:
    sbar: np.ndarray
    direction: np.ndarray
    norm: float

    @property
    def is_zero(self):
        return self.norm == 0.0

    def __repr__(self):
        return f"MassDefect(|S|={self.norm:.3e}, S={np.array2string(self.sbar, precision=3)})"


def _values(u):
    return u.values if isinstance(u, GridState) else np.asarray(u, dtype=float)


def mass_defect(u_n, u_bar, weights=None):
    """S = sum_i m_i (u_i^n - u_bar_i) and its unit direction (zero when S vanishes)."""
    if weights is None:
        weights = u_n.weights
    before, after = _values(u_n), _values(u_bar)
    if before.shape != after.shape:
        raise ValueError(f"Mass defect needs matching shapes, got {before.shape} and {after.shape}")
    sbar = integrate(before, weights) - integrate(after, weights)
    norm = float(np.linalg.norm(sbar))
    direction = sbar / norm if norm > 0.0 else np.zeros_like(sbar)
    return MassDefect(sbar=sbar, direction=direction, norm=norm)
