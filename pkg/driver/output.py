import csv
import logging
import os

import numpy as np

from bprk.physics.euler import GAMMA_GAS, conservative_to_primitive

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return FLOAT_FORMAT % float(value)


def _open_for_write(path):
    try:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        return open(path, "w", newline="")
    except OSError as e:
        raise OSError(f"Cannot write {path}: {e}") from e


def _write_rows(path, header, rows, comments=()):
    with _open_for_write(path) as f:
        for line in comments:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    logger.info("Wrote %s", path)
    return path


def snapshot_columns(state, is_euler):
    dims = state.dims
    coords = ["x", "y"][:dims]
    if not is_euler:
        names = ["u"] if state.components == 1 else [f"u{c}" for c in range(state.components)]
        return coords + names
    if dims == 1:
        return coords + ["rho", "rho_v", "E", "v", "P"]
    return coords + ["rho", "rho_u", "rho_v", "E", "u", "v", "P"]


def emit_snapshot(state, path, is_euler=False, gamma_gas=GAMMA_GAS, comments=()):
    """Nodal values as CSV, 2D grids row-major with the coordinates leading."""
    header = snapshot_columns(state, is_euler)
    columns = [c.ravel() for c in state.grid.mesh()]
    columns += [v.ravel() for v in state.values]
    if is_euler:
        primitive = conservative_to_primitive(state.values, gamma_gas)
        columns += [q.ravel() for q in primitive[1:]]
    return _write_rows(path, header, zip(*columns), comments)


def timeseries_header(components):
    return (["step", "t"] + [f"mass_residual_{c}" for c in range(components)]
            + ["sbar_norm", "min_bound_distance", "sigma_total", "l1_error", "l2_error", "fallback"])


def write_timeseries(report, path, comments=()):
    components = len(report.rows[0].mass_residual) if report.rows else 0
    rows = []
    for row in report.rows:
        rows.append([row.step, row.t] + list(row.mass_residual)
                    + [row.sbar_norm, row.min_bound_distance, row.sigma_total,
                       row.l1_error, row.l2_error, row.fallback])
    return _write_rows(path, timeseries_header(components), rows, comments)


CONVERGENCE_HEADER = ["scheme", "method", "dt", "l2_error", "observed_order", "fitted_order", "monotone"]


def write_convergence(rows, path, comments=()):
    data = [[r.scheme, r.method, r.dt, r.l2_error, r.observed_order, r.fitted_order, r.monotone] for r in rows]
    return _write_rows(path, CONVERGENCE_HEADER, data, comments)
