"""Plain and bounds-preserving explicit Runge-Kutta steps.

Both steppers share ``_accumulate`` so that, with the identity mapping, the
bounds-preserving step performs exactly the floating point operations of the
plain one.
"""

import logging

import numpy as np

from ..core.errors import ConsistencyError, DomainError, PropagationError, TimeStepTooLargeError, first_node
from ..core.grid_state import integrate
from ..core.step_tracker import StepTracker
from ..mappings.bounds_mapping import DEFAULT_EULER_FORM, DEFAULT_TOLERANCE, mapping_for
from ..mass_correction.correction import correct_mass

logger = logging.getLogger(__name__)

OVERFLOW_LIMIT = 700.0
# crecimiento maximo de un canal exponencial en una etapa (factor e^3 sobre u^n)
STAGE_GROWTH_LIMIT = 3.0
ROOM_ATTEMPTS = 6
ROOM_GROWTH = 4.0


class StageWorkspace:
    """Per-stage right-hand sides and physical stage states of one step."""

    def __init__(self, stages, shape):
        self.shape = tuple(shape)
        self.rhs = [None] * stages
        self.states = [None] * stages

    def record(self, j, state, rhs):
        if np.shape(rhs) != self.shape:
            raise ValueError(f"Stage {j} produced shape {np.shape(rhs)}, expected {self.shape}")
        self.states[j] = state
        self.rhs[j] = rhs

    def combine(self, base, weights, dt):
        return _accumulate(base, self.rhs, weights, dt)


def _accumulate(base, increments, weights, dt):
    total = np.array(base, dtype=float, copy=True)
    for weight, increment in zip(weights, increments):
        if weight != 0.0:
            total += (dt * weight) * increment
    return total


def _evaluate(rhs, values, t, tracker):
    tracker.track_rhs()
    result = np.asarray(rhs(values, t), dtype=float)
    bad = ~np.all(np.isfinite(result), axis=0)
    if np.any(bad):
        raise PropagationError("Non-finite right-hand side", node=first_node(bad))
    return result


def _check_dt(dt):
    if not dt > 0:
        raise ValueError(f"Time step must be positive, got {dt}")


def rk_step(state, rhs, tab, dt, tracker=None):
    """One explicit RK step u^n -> u^{n+1}, no bounds enforcement."""
    _check_dt(dt)
    tracker = tracker or StepTracker()
    u0 = state.values
    work = StageWorkspace(tab.stages, u0.shape)
    for j in range(tab.stages):
        stage = work.combine(u0, tab.A[j, :j], dt)
        work.record(j, stage, _evaluate(rhs, stage, state.time + tab.c[j] * dt, tracker))
    return state.with_values(work.combine(u0, tab.b, dt), state.time + dt)


def _guard_overflow(mapping, w):
    """Auxiliary values beyond exp's range mean dt is too large for the local bounds."""
    channels = mapping.overflow_channels(w.shape[0])
    if not np.any(channels):
        return
    guarded = np.abs(w[channels])
    bad = np.any(~(guarded <= OVERFLOW_LIMIT), axis=0)
    if np.any(bad):
        node = first_node(bad)
        index = node if isinstance(node, tuple) else (node,)
        value = float(np.max(guarded[(slice(None),) + index]))
        raise TimeStepTooLargeError(node, value)


class _RoomExhausted(Exception):
    """An exponential channel grew too fast in a stage: the local room is too small for dt."""

    def __init__(self, nodes, growth, drives):
        self.nodes = nodes
        self.growth = growth
        self.drives = drives
        super().__init__(f"stage growth {growth:.3e}")


def _check_growth(mapping, w_stage, w0, drives):
    if not mapping.adapts_room:
        return
    channels = mapping.overflow_channels(w_stage.shape[0])
    diff = w_stage[channels] - w0[channels]
    # el canal de energia solo molesta al crecer; los de momento por sinh en ambos sentidos
    diff[:-1] = np.abs(diff[:-1])
    growth = np.max(diff, axis=0)
    nodes = growth > STAGE_GROWTH_LIMIT
    if np.any(nodes):
        raise _RoomExhausted(nodes, float(np.max(growth)), list(drives))


def _mapped_stages(state, rhs, tab, dt, mapping, residual0, tracker):
    """Stage loop on w = G(u); returns (w0, w_new) or raises _RoomExhausted."""
    u0 = state.values
    try:
        w0 = mapping.forward(u0)
    except DomainError as e:
        raise ConsistencyError(f"u^n is outside its own widened bounds: {e}") from e
    tracker.track_map()

    work = StageWorkspace(tab.stages, u0.shape)
    drives = []
    for j in range(tab.stages):
        w_stage = work.combine(w0, tab.A[j, :j], dt)
        _guard_overflow(mapping, w_stage)
        _check_growth(mapping, w_stage, w0, drives)
        if j == 0:
            u_stage, residual = u0, residual0
        else:
            u_stage = mapping.inverse(w_stage)
            residual = _evaluate(rhs, u_stage, state.time + tab.c[j] * dt, tracker)
        drives.append(dt * residual)
        try:
            work.record(j, u_stage, mapping.jacobian_vecprod(u_stage, residual, strict=True))
        except DomainError as e:
            raise ConsistencyError(f"Stage {j} state left the widened bounds: {e}") from e
        tracker.track_map(2)

    w_new = work.combine(w0, tab.b, dt)
    _guard_overflow(mapping, w_new)
    _check_growth(mapping, w_new, w0, drives)
    return w0, w_new


def bprk_step(state, rhs, tab, dt, bounds, gamma_mode="analytic_with_fallback",
              tolerance=DEFAULT_TOLERANCE, gamma_solver="bisection", gamma_iters=5, tracker=None,
              euler_form=DEFAULT_EULER_FORM):
    """One bounds-preserving RK step; returns a StepResult with the corrected state.

    The RK stages run on w = G(u), the mapped state; the stage right-hand side is
    G'(u*) L(u*) with u* = G^{-1}(w*). The mass lost by the nonlinear mapping is
    put back by ``correct_mass`` without leaving the admissible sets.

    Euler sets keep per-node room above the entropy floor for the energy growth
    the step drives. When a stage still outgrows that room the step is redone
    from u^n with the room widened at the offending nodes.
    """
    _check_dt(dt)
    tracker = tracker or StepTracker()
    tracker.start_step()

    u0 = state.values
    residual0 = _evaluate(rhs, u0, state.time, tracker)
    drives = [dt * residual0]
    room_floor = None
    for attempt in range(ROOM_ATTEMPTS):
        mapping = mapping_for(bounds, tolerance, components=state.components, euler_form=euler_form,
                              reference=u0, drives=drives, room_floor=room_floor)
        try:
            w0, w_new = _mapped_stages(state, rhs, tab, dt, mapping, residual0, tracker)
            break
        except _RoomExhausted as e:
            logger.debug("t=%.6g attempt %d: %s at %d nodes, widening room", state.time, attempt + 1, e,
                         int(np.count_nonzero(e.nodes)))
            drives.extend(e.drives[1:])
            room_floor = np.where(e.nodes, ROOM_GROWTH * mapping.room, mapping.room)
            exhausted = e
    else:
        raise TimeStepTooLargeError(first_node(exhausted.nodes), exhausted.growth)

    u_bar = mapping.inverse(w_new)
    tracker.track_map()

    corrected, gammas, defect = correct_mass(u0, u_bar, mapping.widened, state.weights,
                                             mode=gamma_mode, solver=gamma_solver, iters=gamma_iters)
    new_state = state.with_values(corrected, state.time + dt)
    new_state.check_finite("corrected state")

    # nodos congelados o sin cota tienen holgura infinita
    slack = mapping.widened.slack(corrected)
    finite = slack[np.isfinite(slack)]
    min_distance = float(np.min(finite)) if finite.size else None
    residual_mass = integrate(corrected, state.weights) - integrate(u0, state.weights)
    logger.debug("t=%.6g |S|=%.3e gamma=%s min distance=%s", new_state.time, defect.norm,
                 gammas.mode_used, min_distance)

    return tracker.end_step(new_state, fallback_triggered=gammas.mode_used == "fallback",
                            sbar=defect.sbar, sbar_norm=defect.norm, mass_residual=residual_mass,
                            min_bound_distance=min_distance, gamma_mode_used=gammas.mode_used)
