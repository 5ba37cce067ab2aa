"""Initial conditions of every reproduced test case, keyed by their CLI name."""

from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple

import numpy as np

from .periodize import periodize
from ..core.errors import ConfigError
from ..core.grid_state import Grid, GridState
from ..physics.equations import Burgers, Equation, Euler, LinearAdvection
from ..physics.euler import GAMMA_GAS, primitive_to_conservative
from ..physics.riemann import PrimitiveState


@dataclass
class ProblemSpec:
    name: str
    dims: int
    equation: Equation
    extent: List[Tuple[float, float]]
    initial_condition: Callable
    t_end: float
    dt: float
    n: int
    bounds: str
    scheme: str = "rk4"
    method: str = "bp"
    reference: str = "none"
    offset: float = 0.0
    riemann: Optional[Tuple[PrimitiveState, PrimitiveState, float]] = None
    periodized: bool = False
    note: str = ""
    description: str = field(default="", repr=False)

    def grid(self, n=None) -> Grid:
        return Grid(self.n if n is None else n, self.extent, self.offset)

    def initial_state(self, n=None) -> GridState:
        grid = self.grid(n)
        values = self.initial_condition(*grid.mesh())
        return GridState(grid, values, 0.0)

    def with_defaults(self, **overrides) -> "ProblemSpec":
        return replace(self, **overrides)


def _row(values):
    return np.asarray(values, dtype=float)[np.newaxis]


# ==== ecuaciones escalares ====

def _sine(x):
    return _row(np.sin(2.0 * np.pi * x))


def _three_shapes(x):
    y = 2.0 * x
    u = np.zeros_like(x)
    gauss = np.abs(y - 0.3) <= 0.25
    square = np.abs(y - 0.9) <= 0.2
    dome = np.abs(y - 1.6) <= 0.2
    u[gauss] = np.exp(-300.0 * (y[gauss] - 0.3) ** 2)
    u[square] = 1.0
    u[dome] = np.sqrt(np.maximum(1.0 - ((y[dome] - 1.6) / 0.2) ** 2, 0.0))
    return _row(u)


def _shifted_sine(x):
    return _row(np.sin(2.0 * np.pi * x) + 2.0)


# ==== Euler ====

def _riemann_1d(left, right, interface=0.5, gamma_gas=GAMMA_GAS):
    def condition(x):
        q = np.where(x <= interface,
                     np.array([left.rho, left.v, left.p])[:, np.newaxis],
                     np.array([right.rho, right.v, right.p])[:, np.newaxis])
        return primitive_to_conservative(q, gamma_gas)
    return condition


CASE12_QUADRANTS = {
    # (x > 0.5, y > 0.5): [rho, u, v, P]
    (False, False): (0.8, 0.0, 0.0, 1.0),
    (False, True): (1.0, 3.0 / np.sqrt(17.0), 0.0, 1.0),
    (True, False): (1.0, 0.0, 3.0 / np.sqrt(17.0), 1.0),
    (True, True): (17.0 / 32.0, 0.0, 0.0, 0.4),
}


def _case12(x, y):
    q = np.zeros((4,) + x.shape)
    for (east, north), state in CASE12_QUADRANTS.items():
        mask = ((x > 0.5) == east) & ((y > 0.5) == north)
        q[:, mask] = np.asarray(state)[:, np.newaxis]
    return primitive_to_conservative(q)


KH_INNER = (2.0, 0.5, 0.0, 2.5)
KH_OUTER = (1.0, -0.5, 0.0, 2.5)
KH_AMPLITUDE = 1e-2
KH_FREQUENCY = 2


def _kelvin_helmholtz(x, y):
    phi = KH_AMPLITUDE * np.sin(KH_FREQUENCY * np.pi * x)
    inner = np.abs(y + phi) <= 0.5
    q = np.where(inner, np.asarray(KH_INNER)[:, np.newaxis, np.newaxis],
                 np.asarray(KH_OUTER)[:, np.newaxis, np.newaxis])
    return primitive_to_conservative(q)


def _shock_tube(name, left, right, t_end, dt, n, description):
    return periodize(ProblemSpec(
        name=name, dims=1, equation=Euler(1), extent=[(0.0, 1.0)],
        initial_condition=_riemann_1d(left, right), t_end=t_end, dt=dt, n=n,
        bounds="idp", reference="riemann_sampler", riemann=(left, right, 0.5),
        description=description))


SOD_LEFT = PrimitiveState(1.0, 0.0, 1.0)
SOD_RIGHT = PrimitiveState(0.125, 0.0, 0.1)


def _build_library():
    problems = [
        ProblemSpec("advection_smooth", 1, LinearAdvection(1.0), [(0.0, 1.0)], _sine,
                    t_end=10.0, dt=1e-3, n=32, bounds="dmp", reference="exact_translation",
                    note="t_end = 10 instead of 100",
                    description="Linear transport of sin(2 pi x), smooth convergence case"),
        ProblemSpec("advection_shapes", 1, LinearAdvection(1.0), [(0.0, 1.0)], _three_shapes,
                    t_end=10.0, dt=4e-3, n=128, bounds="dmp", reference="exact_translation",
                    note="t_end = 10 instead of 100",
                    description="Linear transport of a Gaussian, a square pulse and a half ellipse"),
        ProblemSpec("burgers_sine", 1, Burgers(), [(0.0, 1.0)], _shifted_sine,
                    t_end=1.0, dt=1e-3, n=64, bounds="dmp", scheme="rk2",
                    description="Inviscid Burgers, sin(2 pi x) + 2, shock forms before t = 1"),
        _shock_tube("sod", SOD_LEFT, SOD_RIGHT, 0.2, 1e-3, 128, "Sod shock tube"),
        _shock_tube("sod_modified", PrimitiveState(1.0, 0.75, 1.0), SOD_RIGHT, 0.2, 1e-3, 128,
                    "Sod shock tube with a sonic rarefaction"),
        _shock_tube("woodward_colella", PrimitiveState(1.0, 0.0, 1000.0), PrimitiveState(1.0, 0.0, 0.01),
                    0.012, 2e-5, 256, "Left half of the Woodward-Colella blast wave"),
        periodize(ProblemSpec("riemann2d_case12", 2, Euler(2), [(0.0, 1.0), (0.0, 1.0)], _case12,
                              t_end=0.2, dt=2e-4, n=128, bounds="idp",
                              note="n = 128 per half-domain (256^2 nodes) instead of 400^2",
                              description="Two-dimensional four-quadrant Riemann problem")),
        ProblemSpec("kelvin_helmholtz", 2, Euler(2), [(-1.0, 1.0), (-1.0, 1.0)], _kelvin_helmholtz,
                    t_end=1.0, dt=1e-3, n=64, bounds="idp", offset=0.5,
                    note="n = 64 (128^2 nodes) instead of 100^2..400^2",
                    description="Kelvin-Helmholtz shear layer with a sinusoidal interface"),
    ]
    return {p.name: p for p in problems}


PROBLEMS = _build_library()


def ic_library(name) -> ProblemSpec:
    key = str(name).lower()
    if key not in PROBLEMS:
        raise ConfigError(f"Unknown problem '{name}'. Available: {', '.join(list_problems())}")
    return PROBLEMS[key]


def list_problems():
    return sorted(PROBLEMS)
