import numpy as np


class Stencil:
    """Face-neighbour stencil of a periodic grid: node i plus i-1 and i+1 along every axis."""

    def __init__(self, dims=1):
        if dims not in (1, 2):
            raise ValueError(f"Stencil supports 1 or 2 dimensions, got {dims}")
        self.dims = dims

    @property
    def offsets(self):
        """(axis, shift) of every neighbour; np.roll by ``shift`` brings that neighbour to node i."""
        return [(axis, shift) for axis in range(self.dims) for shift in (1, -1)]

    @property
    def size(self):
        return 1 + len(self.offsets)

    def neighbors(self, values):
        """Neighbour values aligned with their node, one array of the input's shape per offset."""
        values = np.asarray(values, dtype=float)
        return [np.roll(values, shift, axis=axis + 1) for axis, shift in self.offsets]

    def pool(self, values):
        """Stacked values over A(i): shape (size, m, *grid)."""
        values = np.asarray(values, dtype=float)
        return np.stack([values] + self.neighbors(values))

    def indices(self, node, shape):
        """Index list A(i) of one node (int in 1D, tuple in 2D) on a grid of the given shape."""
        index = (node,) if np.isscalar(node) else tuple(node)
        result = [index]
        for axis, shift in self.offsets:
            neighbor = list(index)
            neighbor[axis] = (neighbor[axis] - shift) % shape[axis]
            result.append(tuple(neighbor))
        return [i[0] for i in result] if self.dims == 1 else result

    def __repr__(self):
        return f"Stencil(dims={self.dims}, size={self.size})"
