from typing import List, Sequence, Tuple

import numpy as np

from .errors import ConfigError, PropagationError, first_node


class Grid:
    """Periodic equispaced grid with ``n`` nodes per unit length on every axis."""

    def __init__(self, n: int, extent: Sequence[Tuple[float, float]], offset: float = 0.0):
        if n < 2:
            raise ConfigError(f"Grid needs at least 2 nodes per unit length, got {n}")
        self.n = int(n)
        self.extent = [(float(lo), float(hi)) for lo, hi in extent]
        self.dims = len(self.extent)
        self.offset = float(offset)
        self.h = 1.0 / self.n

        shape = []
        for lo, hi in self.extent:
            count = (hi - lo) * self.n
            if abs(count - round(count)) > 1e-9:
                raise ConfigError(f"Extent ({lo}, {hi}) is not a whole number of cells for n={n}")
            shape.append(int(round(count)))
        self.shape = tuple(shape)

    @property
    def lengths(self) -> List[float]:
        return [hi - lo for lo, hi in self.extent]

    @property
    def weight(self) -> float:
        # m_i = h^d, exacto para la regla del trapecio periodica
        return self.h ** self.dims

    @property
    def node_count(self) -> int:
        return int(np.prod(self.shape))

    def coordinates(self, axis: int = 0) -> np.ndarray:
        lo, _ = self.extent[axis]
        return lo + (np.arange(self.shape[axis]) + self.offset) * self.h

    def mesh(self) -> List[np.ndarray]:
        axes = [self.coordinates(a) for a in range(self.dims)]
        return np.meshgrid(*axes, indexing="ij")

    def __repr__(self):
        return f"Grid(dims={self.dims}, n={self.n}, shape={self.shape}, extent={self.extent})"


class GridState:
    """Nodal solution: ``values`` has shape (m, *grid.shape)."""

    def __init__(self, grid: Grid, values: np.ndarray, time: float = 0.0):
        values = np.asarray(values, dtype=float)
        if values.ndim == grid.dims:
            values = values[np.newaxis]
        if values.shape[1:] != grid.shape:
            raise ValueError(f"Values of shape {values.shape} do not match grid {grid.shape}")
        self.grid = grid
        self.values = values
        self.time = float(time)

    @property
    def components(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> int:
        return self.grid.dims

    @property
    def weights(self) -> float:
        return self.grid.weight

    def mass(self) -> np.ndarray:
        return integrate(self.values, self.grid.weight)

    def with_values(self, values, time=None) -> "GridState":
        return GridState(self.grid, values, self.time if time is None else time)

    def check_finite(self, what="state"):
        bad = ~np.all(np.isfinite(self.values), axis=0)
        if np.any(bad):
            raise PropagationError(f"Non-finite {what}", node=first_node(bad))

    def __repr__(self):
        return f"GridState(t={self.time:.6g}, m={self.components}, shape={self.grid.shape})"


def integrate(values: np.ndarray, weights) -> np.ndarray:
    """Per-component sum of m_i u_i; numpy's pairwise sum keeps it deterministic."""
    node_axes = tuple(range(1, values.ndim))
    return np.sum(weights * values, axis=node_axes)
