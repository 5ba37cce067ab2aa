"""Linear-invariant-preserving correction u^{n+1} = u_bar + gamma_i n."""

import logging
from dataclasses import dataclass

import numpy as np

from .defect import mass_defect
from .gamma import direction_column, cap_gamma, gamma_star_analytic, gamma_star_numeric
from ..core.errors import ConfigError, CorrectionInfeasibleError

logger = logging.getLogger(__name__)

GAMMA_MODES = ("analytic", "numeric", "analytic_with_fallback")


@dataclass
class GammaResult:
    gamma_star: np.ndarray
    gamma: np.ndarray
    mode_used: str


def apply_correction(u_bar, defect, gamma_star, weights):
    """Scale gamma* so that sum_i m_i gamma_i = |S| and move every node along n.

    Returns the corrected values and the applied gamma_i.
    """
    u_bar = np.asarray(u_bar, dtype=float)
    if defect.is_zero:
        return u_bar.copy(), np.zeros(u_bar.shape[1:])

    gamma_star = cap_gamma(gamma_star, u_bar)
    pooled = float(np.sum(weights * gamma_star))
    if not pooled > defect.norm:
        raise CorrectionInfeasibleError(
            f"Mass correction infeasible: |S|={defect.norm:.3e} but sum m_i gamma*_i={pooled:.3e}")
    gamma = gamma_star * (defect.norm / pooled)
    return u_bar + direction_column(defect.direction, u_bar.ndim) * gamma, gamma


def correct_mass(u_n, u_bar, admissible, weights, mode="analytic_with_fallback", solver="bisection", iters=5):
    """Mass defect of the step plus its correction; returns (values, GammaResult, MassDefect)."""
    if mode not in GAMMA_MODES:
        raise ConfigError(f"Unknown gamma mode '{mode}'. Available: {', '.join(GAMMA_MODES)}")
    u_bar = np.asarray(u_bar, dtype=float)
    defect = mass_defect(u_n, u_bar, weights)
    if defect.is_zero:
        zeros = np.zeros(u_bar.shape[1:])
        return u_bar.copy(), GammaResult(zeros, zeros, mode), defect

    n = defect.direction
    analytic = gamma_star_analytic(u_bar, n, admissible)
    if mode == "numeric":
        gamma_star = gamma_star_numeric(u_bar, n, admissible, analytic, iters, solver)
        corrected, gamma = apply_correction(u_bar, defect, gamma_star, weights)
        return corrected, GammaResult(gamma_star, gamma, "numeric"), defect

    corrected, gamma = apply_correction(u_bar, defect, analytic, weights)
    if mode == "analytic":
        return corrected, GammaResult(analytic, gamma, "analytic"), defect

    violated = ~admissible.contains(corrected)
    if not np.any(violated):
        return corrected, GammaResult(analytic, gamma, "analytic"), defect

    logger.warning("Analytic gamma left %d nodes outside their bounds; recomputing gamma* numerically",
                   int(np.count_nonzero(violated)))
    gamma_star = gamma_star_numeric(u_bar, n, admissible, analytic, iters, solver)
    corrected, gamma = apply_correction(u_bar, defect, gamma_star, weights)
    return corrected, GammaResult(gamma_star, gamma, "fallback"), defect
