import time


class StepResult:
    def __init__(self, state, execution_time_ms, rhs_evals, map_evals, sbar=None, sbar_norm=0.0,
                 mass_residual=None, min_bound_distance=None, gamma_mode_used=None,
                 fallback_triggered=False):
        self.state = state
        self.execution_time_ms = execution_time_ms
        self.rhs_evals = rhs_evals
        self.map_evals = map_evals
        self.sbar = sbar
        self.sbar_norm = sbar_norm
        self.mass_residual = mass_residual
        self.min_bound_distance = min_bound_distance
        self.gamma_mode_used = gamma_mode_used
        self.fallback_triggered = fallback_triggered

    def __repr__(self):
        fallback_info = " [FALLBACK]" if self.fallback_triggered else ""
        mode_info = f" gamma={self.gamma_mode_used}" if self.gamma_mode_used else ""
        return (f"StepResult(t={self.state.time:.6g}, time={self.execution_time_ms:.2f}ms, "
                f"rhs={self.rhs_evals}, maps={self.map_evals}, |S|={self.sbar_norm:.3e}"
                f"{mode_info}{fallback_info})")


class StepTracker:
    """Cuenta evaluaciones del RHS y de los mapeos durante un paso."""

    def __init__(self):
        self.reset()

    def reset(self):
        self.rhs_evals = 0
        self.map_evals = 0
        self.start_time = 0
        self.fallback_occurred = False

    def start_step(self):
        self.reset()
        self.start_time = time.perf_counter()

    def track_rhs(self):
        self.rhs_evals += 1

    def track_map(self, count=1):
        self.map_evals += count

    def end_step(self, state, fallback_triggered=False, **diagnostics):
        execution_time = (time.perf_counter() - self.start_time) * 1000
        if fallback_triggered:
            self.fallback_occurred = True
        result = StepResult(state, execution_time, self.rhs_evals, self.map_evals,
                            fallback_triggered=self.fallback_occurred, **diagnostics)
        self.reset()
        return result
