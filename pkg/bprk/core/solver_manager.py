import logging

import numpy as np

from .errors import ConfigError, ConsistencyError, DomainError, PropagationError, VacuumError, first_node
from .step_tracker import StepTracker
from ..bounds.dmp import dmp_bounds, global_envelope, positivity_bounds
from ..bounds.idp import idp_bounds
from ..bounds.stencil import Stencil
from ..mappings.admissible_sets import Unbounded
from ..mappings.bounds_mapping import DEFAULT_EULER_FORM, DEFAULT_TOLERANCE
from ..mappings.euler_maps import check_form
from ..mass_correction.correction import GAMMA_MODES
from ..mass_correction.gamma import GAMMA_SOLVERS
from ..rk.butcher import TABLEAUX, builtin_tableau
from ..rk.stepper import bprk_step, rk_step
from ..spectral.fourier import semidiscrete_operator

logger = logging.getLogger(__name__)


class SolverManager:

    SCHEMES = tuple(sorted(TABLEAUX))
    METHODS = ("plain", "bp")

    BOUNDS_KINDS = {
        "none": {"scalar": True, "euler": True},
        "positivity": {"scalar": True, "euler": False},
        "dmp": {"scalar": True, "euler": True},
        "idp": {"scalar": False, "euler": True},
        "idp_positivity_only": {"scalar": False, "euler": True},
    }

    def __init__(self, equation, grid, scheme="rk4", method="bp", bounds="none",
                 tolerance=DEFAULT_TOLERANCE, gamma_mode="analytic_with_fallback",
                 gamma_solver="bisection", gamma_iters=5, euler_form=DEFAULT_EULER_FORM):
        if method not in self.METHODS:
            raise ConfigError(f"Unknown method '{method}'. Available: {', '.join(self.METHODS)}")
        if gamma_mode not in GAMMA_MODES:
            raise ConfigError(f"Unknown gamma mode '{gamma_mode}'. Available: {', '.join(GAMMA_MODES)}")
        if gamma_solver not in GAMMA_SOLVERS:
            raise ConfigError(f"Unknown gamma solver '{gamma_solver}'. Available: {', '.join(GAMMA_SOLVERS)}")
        self._validate_bounds(bounds, equation)
        check_form(euler_form)

        self.equation = equation
        self.grid = grid
        self.tableau = builtin_tableau(scheme)
        self.method = method
        self.bounds = bounds
        self.tolerance = tolerance
        self.gamma_mode = gamma_mode
        self.gamma_solver = gamma_solver
        self.gamma_iters = gamma_iters
        self.euler_form = euler_form
        # cotas globales de la condicion inicial, fijadas en la primera llamada a build_bounds
        self.envelope = None
        self.stencil = Stencil(grid.dims)
        self.rhs = semidiscrete_operator(grid, equation)
        self.tracker = StepTracker()
        logger.debug("Created %r", self)

    def _validate_bounds(self, bounds, equation):
        if bounds not in self.BOUNDS_KINDS:
            raise ConfigError(f"Unknown bounds kind '{bounds}'. Available: {', '.join(self.BOUNDS_KINDS)}")
        family = "euler" if equation.is_euler else "scalar"
        if not self.BOUNDS_KINDS[bounds][family]:
            raise ConfigError(f"Bounds kind '{bounds}' cannot be used with the {equation.name} equation")

    def build_bounds(self, state):
        """Per-node admissible sets of the step, computed once from u^n."""
        if self.bounds == "none":
            return Unbounded()
        if self.bounds == "positivity":
            return positivity_bounds(state)
        if self.bounds == "dmp":
            if self.envelope is None:
                self.envelope = global_envelope(state)
            return dmp_bounds(state, self.stencil, self.envelope)
        gamma_gas = self.equation.gamma_gas
        return idp_bounds(state, self.stencil, gamma_gas, positivity_only=self.bounds == "idp_positivity_only")

    def step(self, state, dt):
        if self.method == "plain":
            return self._plain_step(state, dt)
        try:
            bounds = self.build_bounds(state)
        except VacuumError:
            raise
        except DomainError as e:
            # u^n sale de un paso BP: si no admite cotas el fallo es interno
            raise ConsistencyError(f"Cannot build {self.bounds} bounds at t={state.time:.6g}: {e}") from e
        return bprk_step(state, self.rhs, self.tableau, dt, bounds, gamma_mode=self.gamma_mode,
                         tolerance=self.tolerance, gamma_solver=self.gamma_solver,
                         gamma_iters=self.gamma_iters, tracker=self.tracker, euler_form=self.euler_form)

    def _plain_step(self, state, dt):
        self.tracker.start_step()
        new_state = rk_step(state, self.rhs, self.tableau, dt, self.tracker)
        new_state.check_finite()
        if self.equation.is_euler:
            bad = ~self.equation.admissible(new_state.values)
            if np.any(bad):
                raise PropagationError("Inadmissible Euler state (rho <= 0 or e <= 0)", node=first_node(bad))
        mass_residual = new_state.mass() - state.mass()
        return self.tracker.end_step(new_state, mass_residual=mass_residual)

    def __repr__(self):
        return (f"SolverManager({self.equation!r}, {self.tableau.name}, method={self.method}, "
                f"bounds={self.bounds}, gamma={self.gamma_mode})")
