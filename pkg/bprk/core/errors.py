import numpy as np


class SolverError(Exception):
    """Base de todos los errores del solver."""


class ConfigError(SolverError, ValueError):
    pass


class DomainError(SolverError, ValueError):
    """A state lies outside the domain of a mapping or physical function."""


class VacuumError(DomainError):
    pass


class TimeStepTooLargeError(SolverError):
    def __init__(self, node, value=None):
        self.node = node
        self.value = value
        detail = f" (w={value:.3e})" if value is not None else ""
        super().__init__(f"Time step too large near bounds at node {node}{detail}")


class PropagationError(SolverError):
    def __init__(self, message, node=None):
        self.node = node
        if node is not None:
            message = f"{message} at node {node}"
        super().__init__(message)


class CorrectionInfeasibleError(SolverError):
    pass


class ConsistencyError(SolverError):
    pass


def first_node(mask):
    """Label of the first True entry of a per-node mask (int in 1D, tuple in 2D)."""
    mask = np.asarray(mask)
    if mask.ndim == 0:
        return 0
    flat = int(np.argmax(mask.ravel()))
    idx = tuple(int(i) for i in np.unravel_index(flat, mask.shape))
    return idx[0] if len(idx) == 1 else idx
