"""Per-node length gamma* of the segment u_bar + alpha n, 0 <= alpha < gamma*, inside an admissible set.

Analytic distances exist for boxes, half-lines and disks. For the Euler set the
analytic value gamma** is the first crossing of either the density bounds or
positive internal energy; it bounds the true gamma* from above, and the numeric
root bracketing on ``[0, gamma**]`` recovers gamma* itself.
"""

import numpy as np

from ..core.errors import ConfigError, ConsistencyError, first_node
from ..mappings.admissible_sets import Ball2, EulerIDP, Interval, OneSided, Unbounded, split_euler

GAMMA_CAP = 1e12
LINEAR_TOLERANCE = 1e-14
GAMMA_SOLVERS = ("bisection", "illinois")


def direction_column(n, ndim):
    """Direction vector shaped (m, 1, ..., 1) to broadcast over node axes."""
    n = np.asarray(n, dtype=float)
    return n.reshape(n.shape + (1,) * (ndim - 1))


def _along(u, n, alpha):
    return u + direction_column(n, u.ndim) * alpha


def _ratio(distance, speed):
    """distance / speed where speed > 0, +inf elsewhere."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(speed > 0.0, np.maximum(distance, 0.0) / np.where(speed > 0.0, speed, 1.0), np.inf)


def cap_gamma(gamma, u):
    """Infinite (or huge) distances are capped at 1e12 (1 + ||u_i||_inf)."""
    u = np.asarray(u, dtype=float)
    cap = GAMMA_CAP * (1.0 + np.max(np.abs(u), axis=0))
    return np.minimum(gamma, cap)


# ==== DMP / caja ====

def gamma_star_dmp(u_bar, interval, sign):
    """Scalar DMP distance: b - u_bar when sign >= 0, else u_bar - a."""
    u_bar = np.asarray(u_bar, dtype=float)
    lower, upper = interval.lower, interval.upper
    outside = (u_bar < lower) | (u_bar > upper)
    if np.any(outside):
        raise ConsistencyError(f"u_bar outside its interval at node {first_node(outside)}")
    result = upper - u_bar if sign >= 0 else u_bar - lower
    return float(result) if result.ndim == 0 else result


def gamma_star_box(u, n, interval):
    u = np.asarray(u, dtype=float)
    col = direction_column(n, u.ndim)
    upward = _ratio(interval.upper - u, np.broadcast_to(col, u.shape))
    downward = _ratio(u - interval.lower, np.broadcast_to(-col, u.shape))
    return np.min(np.minimum(upward, downward), axis=0)


def gamma_star_one_sided(u, n, lower_set):
    u = np.asarray(u, dtype=float)
    col = direction_column(n, u.ndim)
    return np.min(_ratio(u - lower_set.lower, np.broadcast_to(-col, u.shape)), axis=0)


def gamma_star_ball(u, n, ball):
    """First crossing of |p + alpha q| = r0 for the two disk components."""
    i, j = ball.components
    u = np.asarray(u, dtype=float)
    n = np.asarray(n, dtype=float)
    qq = n[i] ** 2 + n[j] ** 2
    pq = u[i] * n[i] + u[j] * n[j]
    room = ball.radius ** 2 - (u[i] ** 2 + u[j] ** 2)
    if qq == 0.0:
        return np.full(u.shape[1:], np.inf)
    root = (-pq + np.sqrt(pq * pq + qq * np.maximum(room, 0.0))) / qq
    return np.maximum(root, 0.0)


# ==== Euler ====

def gamma_star_density(u, n, bounds):
    """Distance to the density bounds along n; +inf when n_rho = 0."""
    u = np.asarray(u, dtype=float)
    n_rho = float(np.asarray(n, dtype=float)[0])
    rho = u[0]
    if n_rho > 0.0:
        return np.maximum(bounds.rho_max - rho, 0.0) / n_rho + np.zeros_like(rho)
    if n_rho < 0.0:
        return np.maximum(rho - bounds.rho_min, 0.0) / -n_rho + np.zeros_like(rho)
    return np.full(rho.shape, np.inf)


def gamma_star_quadratic(u, n):
    """First alpha >= 0 where rho E - |m|^2 / 2 vanishes along u + alpha n.

    The functional is a alpha^2 + b alpha + c with c = u_rho u_E - |m|^2 / 2 > 0;
    returns +inf when it never vanishes for alpha >= 0.
    """
    u = np.asarray(u, dtype=float)
    n = np.asarray(n, dtype=float)
    rho, mom, energy = split_euler(u)
    n_rho, n_mom, n_energy = n[0], n[1:-1], n[-1]

    a = n_rho * n_energy - 0.5 * float(np.sum(n_mom ** 2))
    b = n_rho * energy + rho * n_energy - np.tensordot(n_mom, mom, axes=1)
    c = np.maximum(rho * energy - 0.5 * np.sum(mom ** 2, axis=0), 0.0)

    with np.errstate(divide="ignore", invalid="ignore"):
        linear = abs(a) < LINEAR_TOLERANCE * (np.abs(b) + 1.0)
        linear_root = np.where(b < 0.0, c / -np.where(b < 0.0, b, -1.0), np.inf)
        disc = b * b - 4.0 * a * c
        # raiz de menor modulo, forma sin cancelacion
        root = 2.0 * c / (-b + np.sqrt(np.maximum(disc, 0.0)))
        if a > 0.0:
            root = np.where((b < 0.0) & (disc >= 0.0), root, np.inf)
        return np.where(linear, linear_root, root)


def gamma_double_star(u, n, bounds):
    return np.minimum(gamma_star_density(u, n, bounds), gamma_star_quadratic(u, n))


# ==== genericos ====

ANALYTIC_GAMMA = {
    EulerIDP: gamma_double_star,
    Interval: gamma_star_box,
    OneSided: gamma_star_one_sided,
    Ball2: gamma_star_ball,
}


def gamma_star_analytic(u, n, admissible):
    """Closed-form distance (exact for box, half-line and disk sets; gamma** for Euler)."""
    u = np.asarray(u, dtype=float)
    if isinstance(admissible, Unbounded):
        return np.full(u.shape[1:], np.inf)
    for set_type, fn in ANALYTIC_GAMMA.items():
        if isinstance(admissible, set_type):
            return fn(u, n, admissible)
    raise ConfigError(f"No analytic gamma for admissible set {admissible!r}")


def _bisection(u, n, admissible, lo, hi, iters):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        ok = admissible.contains(_along(u, n, mid))
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    return lo


def _illinois(u, n, admissible, lo, hi, iters):
    f_lo = admissible.slack(u)
    f_hi = admissible.slack(_along(u, n, hi))
    last_side = np.zeros(lo.shape, dtype=int)
    for _ in range(iters):
        with np.errstate(divide="ignore", invalid="ignore"):
            x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        x = np.where(np.isfinite(x) & (x > lo) & (x < hi), x, 0.5 * (lo + hi))
        f_x = admissible.slack(_along(u, n, x))
        feasible = admissible.contains(_along(u, n, x)) & (f_x > 0.0)
        # el extremo que se repite dos veces se pondera a la mitad
        f_hi = np.where(feasible & (last_side == 1), 0.5 * f_hi, f_hi)
        f_lo = np.where(~feasible & (last_side == -1), 0.5 * f_lo, f_lo)
        lo, f_lo = np.where(feasible, x, lo), np.where(feasible, f_x, f_lo)
        hi, f_hi = np.where(feasible, hi, x), np.where(feasible, f_hi, f_x)
        last_side = np.where(feasible, 1, -1)
    return lo


def gamma_star_numeric(u, n, admissible, upper=None, iters=5, solver="bisection"):
    """Largest certified-feasible alpha in [0, upper] by root bracketing on set membership.

    ``upper`` defaults to the (capped) analytic distance. Nodes whose whole
    bracket is feasible return the bracket end.
    """
    if solver not in GAMMA_SOLVERS:
        raise ConfigError(f"Unknown gamma solver '{solver}'. Available: {', '.join(GAMMA_SOLVERS)}")
    u = np.asarray(u, dtype=float)
    if upper is None:
        upper = gamma_star_analytic(u, n, admissible)
    hi = np.array(cap_gamma(upper, u), dtype=float)
    lo = np.zeros_like(hi)

    done = admissible.contains(_along(u, n, hi))
    search = _bisection if solver == "bisection" else _illinois
    lo = search(u, n, admissible, lo, hi, iters)
    return np.where(done, hi, lo)
