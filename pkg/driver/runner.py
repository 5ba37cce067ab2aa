"""Time loop, run reports and convergence studies."""

import logging
import os
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np

from bprk.core.errors import (ConfigError, ConsistencyError, CorrectionInfeasibleError, DomainError,
                              PropagationError, TimeStepTooLargeError)
from bprk.core.solver_manager import SolverManager
from bprk.physics.euler import entropy_integral
from bprk.problems.library import ic_library
from bprk.problems.reference import error_norms, reference_solution

from .output import emit_snapshot, write_convergence, write_timeseries

logger = logging.getLogger(__name__)

EXIT_CODES = {"completed": 0, "diverged": 2, "infeasible": 3}
TIME_EPS = 1e-12


@dataclass
class ReportRow:
    step: int
    t: float
    mass_residual: np.ndarray
    sbar_norm: Optional[float] = None
    min_bound_distance: Optional[float] = None
    sigma_total: Optional[float] = None
    l1_error: Optional[float] = None
    l2_error: Optional[float] = None
    fallback: int = 0


@dataclass
class RunReport:
    config: object
    outcome: str = "completed"
    message: str = ""
    rows: List[ReportRow] = field(default_factory=list)
    final_state: object = None
    steps: int = 0
    fallback_count: int = 0
    max_sigma_increase: Optional[float] = None
    max_mass_residual: float = 0.0
    files: List[str] = field(default_factory=list)

    @property
    def exit_code(self):
        return EXIT_CODES[self.outcome]

    @property
    def completed(self):
        return self.outcome == "completed"

    def final_error(self):
        """(l1, l2) of the last row that has a reference, or None."""
        for row in reversed(self.rows):
            if row.l2_error is not None:
                return row.l1_error, row.l2_error
        return None


def _header_comments(config, spec):
    comments = [f"problem={spec.name} method={config.method} scheme={config.scheme} bounds={config.bounds} "
                f"n={config.n} dt={config.dt} t_end={config.t_end} gamma_mode={config.gamma_mode} "
                f"euler_form={config.euler_form} seed={config.seed}"]
    if spec.note:
        comments.append(f"deviation: {spec.note}")
    return comments


def _make_row(step, state, spec, initial_mass, result=None, fallback=0):
    reference = reference_solution(spec, state.grid, state.time) if spec.reference != "none" else None
    l1 = l2 = None
    if reference is not None:
        l1, l2 = error_norms(state.values, reference, state.weights)
    sigma = None
    if spec.equation.is_euler:
        sigma = entropy_integral(state.values, state.weights, spec.equation.gamma_gas)
    return ReportRow(
        step=step, t=state.time, mass_residual=state.mass() - initial_mass,
        sbar_norm=None if result is None or result.sbar is None else result.sbar_norm,
        min_bound_distance=None if result is None else result.min_bound_distance,
        sigma_total=sigma, l1_error=l1, l2_error=l2, fallback=fallback)


def run(config, write=True, on_row=None) -> RunReport:
    """Integrate the configured problem to t_end; failures become outcomes; internal inconsistencies still raise."""
    config = config.resolved()
    spec = ic_library(config.problem)
    state = spec.initial_state(config.n)
    manager = SolverManager(spec.equation, state.grid, scheme=config.scheme, method=config.method,
                            bounds=config.bounds, tolerance=config.tolerance, gamma_mode=config.gamma_mode,
                            gamma_solver=config.gamma_solver, gamma_iters=config.gamma_iters,
                            euler_form=config.euler_form)
    report = RunReport(config=config)
    logger.info("Running %s: %r, dt=%g, t_end=%g, grid %s", config.label, manager, config.dt,
                config.t_end, state.grid.shape)

    initial_mass = state.mass()
    scale = 1.0 + np.abs(initial_mass)

    def emit(row):
        report.rows.append(row)
        if on_row is not None:
            on_row(row)

    emit(_make_row(0, state, spec, initial_mass))
    sigma_prev = report.rows[0].sigma_total
    pending_fallbacks = 0
    step = 0

    try:
        while state.time < config.t_end * (1.0 - TIME_EPS):
            # el ultimo paso se recorta para terminar en t_end
            dt = min(config.dt, config.t_end - state.time)
            result = manager.step(state, dt)
            state = result.state
            step += 1
            if result.fallback_triggered:
                pending_fallbacks += 1
                report.fallback_count += 1
            residual = float(np.max(np.abs(state.mass() - initial_mass) / scale))
            report.max_mass_residual = max(report.max_mass_residual, residual)

            if spec.equation.is_euler:
                sigma = entropy_integral(state.values, state.weights, spec.equation.gamma_gas)
                if sigma is not None and sigma_prev is not None:
                    increase = sigma - sigma_prev
                    report.max_sigma_increase = (increase if report.max_sigma_increase is None
                                                 else max(report.max_sigma_increase, increase))
                elif sigma is None:
                    logger.warning("sigma undefined at t=%.6g (psi <= 0 somewhere)", state.time)
                sigma_prev = sigma

            last = not state.time < config.t_end * (1.0 - TIME_EPS)
            if step % config.cadence == 0 or last:
                emit(_make_row(step, state, spec, initial_mass, result, pending_fallbacks))
                pending_fallbacks = 0
    except (PropagationError, TimeStepTooLargeError, DomainError) as e:
        report.outcome = "diverged"
        report.message = str(e)
        logger.info("Run %s diverged at step %d (t=%.6g): %s", config.label, step + 1, state.time, e)
    except CorrectionInfeasibleError as e:
        report.outcome = "infeasible"
        report.message = str(e)
        logger.error("Run %s stopped at step %d: %s", config.label, step + 1, e)
    except ConsistencyError as e:
        logger.error("Run %s hit an internal error at step %d (t=%.6g): %s", config.label, step + 1, state.time, e)
        raise

    report.final_state = state
    report.steps = step
    if report.completed:
        logger.info("Run %s completed: %d steps, t=%.6g, %d fallbacks", config.label, step, state.time,
                    report.fallback_count)
    if write and config.out:
        comments = _header_comments(config, spec) + [f"outcome={report.outcome}"]
        report.files.append(write_timeseries(report, os.path.join(config.out, f"{config.label}_timeseries.csv"),
                                             comments))
        if config.snapshot:
            report.files.append(emit_snapshot(state, os.path.join(config.out, f"{config.label}_snapshot.csv"),
                                              spec.equation.is_euler, getattr(spec.equation, "gamma_gas", 1.4),
                                              comments))
    return report


# ==== CONVERGENCIA ====

@dataclass
class ConvergenceRow:
    scheme: str
    method: str
    dt: float
    l2_error: float
    observed_order: Optional[float] = None
    fitted_order: Optional[float] = None
    monotone: bool = True


def fitted_order(dts, errors):
    """Least-squares slope of log(error) against log(dt)."""
    slope, _ = np.polyfit(np.log(dts), np.log(errors), 1)
    return float(slope)


def convergence_study(base, dts=None, schemes=None, write=True) -> List[ConvergenceRow]:
    """L2 error at t_end for every (scheme, dt) pair plus observed and fitted orders."""
    base = base.resolved()
    spec = ic_library(base.problem)
    if spec.reference == "none":
        raise ConfigError(f"Problem '{spec.name}' has no exact reference for a convergence study")
    dts = list(dts or base.dts or [])
    if len(dts) < 3:
        raise ConfigError(f"A convergence study needs at least 3 time steps, got {len(dts)}")
    if any(b >= a for a, b in zip(dts, dts[1:])):
        raise ConfigError(f"Time steps must be strictly decreasing, got {dts}")
    schemes = list(schemes or base.schemes or [base.scheme])

    table = []
    for scheme in schemes:
        rows = []
        for dt in dts:
            config = replace(base, dt=dt, scheme=scheme, label=f"{base.label}_{scheme}_dt{dt:g}", snapshot=False)
            report = run(config, write=False)
            error = report.final_error()
            l2 = error[1] if report.completed and error is not None else float("nan")
            rows.append(ConvergenceRow(scheme, base.method, dt, l2))

        errors = np.array([r.l2_error for r in rows])
        ok = np.all(np.isfinite(errors)) and np.all(errors > 0.0)
        monotone = bool(ok and np.all(np.diff(errors) < 0.0))
        for previous, row in zip(rows, rows[1:]):
            if ok:
                row.observed_order = float(np.log(previous.l2_error / row.l2_error) / np.log(previous.dt / row.dt))
        order = fitted_order(dts, errors) if ok else None
        for row in rows:
            row.fitted_order = order
            row.monotone = monotone
        if not monotone:
            logger.warning("Error sequence for %s is not monotone: %s", scheme, errors)
        logger.info("Fitted order for %s-%s on %s: %s", base.method, scheme, spec.name,
                    "n/a" if order is None else f"{order:.3f}")
        table.extend(rows)

    if write and base.out:
        path = os.path.join(base.out, f"{base.label}_convergence.csv")
        write_convergence(table, path, _header_comments(base, spec))
    return table
