"""Explicit Butcher tableaux."""

from fractions import Fraction

import numpy as np

from ..core.errors import ConfigError


class ButcherTableau:
    def __init__(self, name, A, b, c):
        self.name = name
        self.A = np.asarray(A, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.stages = len(self.b)

        if self.A.shape != (self.stages, self.stages) or self.c.shape != (self.stages,):
            raise ConfigError(f"Tableau {name}: inconsistent shapes A{self.A.shape}, b{self.b.shape}, c{self.c.shape}")
        if np.any(np.triu(self.A) != 0.0):
            raise ConfigError(f"Tableau {name} is not explicit (A must be strictly lower triangular)")
        if abs(self.b.sum() - 1.0) > 1e-14:
            raise ConfigError(f"Tableau {name} is not consistent: sum(b) = {self.b.sum()!r}")

    def __repr__(self):
        return f"ButcherTableau({self.name}, stages={self.stages})"


def _table(A, b, c):
    # fracciones exactas, se convierten a float al final
    return ([[float(Fraction(x)) for x in row] for row in A],
            [float(Fraction(x)) for x in b],
            [float(Fraction(x)) for x in c])


TABLEAUX = {
    "rk1": _table([["0"]], ["1"], ["0"]),
    "rk2": _table([["0", "0"],
                   ["1/2", "0"]],
                  ["0", "1"],
                  ["0", "1/2"]),
    "rk3": _table([["0", "0", "0"],
                   ["1/3", "0", "0"],
                   ["0", "2/3", "0"]],
                  ["1/4", "0", "3/4"],
                  ["0", "1/3", "2/3"]),
    "rk4": _table([["0", "0", "0", "0"],
                   ["1/2", "0", "0", "0"],
                   ["0", "1/2", "0", "0"],
                   ["0", "0", "1", "0"]],
                  ["1/6", "1/3", "1/3", "1/6"],
                  ["0", "1/2", "1/2", "1"]),
}


def builtin_tableau(name: str) -> ButcherTableau:
    key = str(name).lower()
    if key not in TABLEAUX:
        raise ConfigError(f"Unknown Runge-Kutta scheme '{name}'. Available: {', '.join(sorted(TABLEAUX))}")
    A, b, c = TABLEAUX[key]
    return ButcherTableau(key, A, b, c)
