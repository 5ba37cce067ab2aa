"""
COMPARISON 3: Shock tubes with IDP bounds
==========================================
Compares: plain RK4 vs BP-RK4, analytic vs numeric gamma*, gamma* vs gamma**
Problems: sod, sod_modified, woodward_colella (periodized, n=128/128/256)
Metrics: L1 density error vs the exact Riemann solution, entropy integral
         sigma (non-increasing), fallback count, divergence of the plain runs
"""

import sys
import os
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from dataclasses import replace
import logging
import time

import numpy as np

from bprk.bounds.idp import idp_bounds
from bprk.core.solver_manager import SolverManager
from bprk.mass_correction.gamma import gamma_double_star, gamma_star_numeric
from bprk.problems.library import ic_library
from driver.config_types import config_from_mapping
from driver.parser import parse_config_file
from driver.runner import run
from experiments.csv_exporter import export_comparison_3

CONFIG_DIR = os.path.join(project_root, "experiments", "configs")
SIGMA_TOLERANCE = 1e-10
MODE_TOLERANCE = 1e-6


def load(problem):
    return config_from_mapping(parse_config_file(os.path.join(CONFIG_DIR, f"comp3_{problem}.cfg")))


def timed_run(config):
    start = time.perf_counter()
    report = run(config)
    elapsed = (time.perf_counter() - start) * 1000
    error = report.final_error()
    print(f"  {report.config.label}: {report.outcome} after {report.steps} steps ({elapsed:.0f} ms)")
    if report.message:
        print(f"    {report.message}")
    if error is not None and report.completed:
        print(f"    L1 density error: {error[0]:.4e}")
    if report.max_sigma_increase is not None:
        print(f"    max sigma increase per step: {report.max_sigma_increase:.3e}")
    return report, {
        'label': report.config.label,
        'outcome': report.outcome,
        'steps': report.steps,
        'l1_error': error[0] if error is not None and report.completed else None,
        'max_sigma_increase': report.max_sigma_increase,
        'fallbacks': report.fallback_count,
        'time_ms': elapsed,
    }


def gamma_comparison(report):
    """gamma* (numeric, 30 bisections) and gamma** per node along one step's defect direction."""
    state = report.final_state
    spec = ic_library(report.config.problem)
    manager = SolverManager(spec.equation, state.grid, scheme=report.config.scheme, method="bp", bounds="idp")
    result = manager.step(state, report.config.dt)
    if result.sbar_norm == 0.0:
        return []
    n = result.sbar / result.sbar_norm
    bounds = idp_bounds(state, manager.stencil, spec.equation.gamma_gas)
    analytic = gamma_double_star(state.values, n, bounds)
    numeric = gamma_star_numeric(state.values, n, bounds, upper=analytic, iters=30)
    bracket_ok = bool(np.all(numeric <= analytic))
    print(f"    gamma* <= gamma** at every node: {'PASS' if bracket_ok else 'FAIL'}")
    x = state.grid.coordinates(0)
    return [(xi, g, a) for xi, g, a in zip(x, numeric, analytic) if np.isfinite(a)]


def main():
    logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(name)s: %(message)s")
    print("="*70)
    print("COMPARISON 3: SHOCK TUBES")
    print("="*70)

    all_results = []
    failures = 0

    print("\n--- Sod: BP-RK4, analytic gamma with fallback vs numeric gamma ---")
    sod = load("sod")
    analytic_report, res = timed_run(sod)
    all_results.append(res)
    numeric_report, res = timed_run(replace(sod, gamma_mode="numeric", label="sod_bp_rk4_numeric"))
    all_results.append(res)
    if analytic_report.completed and numeric_report.completed:
        diff = float(np.max(np.abs(analytic_report.final_state.values[0] - numeric_report.final_state.values[0])))
        print(f"  max density difference analytic vs numeric: {diff:.3e}")
        failures += diff > MODE_TOLERANCE
    gamma_rows = gamma_comparison(analytic_report) if analytic_report.completed else []

    print("\n--- Sod: plain RK4 control ---")
    plain_report, res = timed_run(replace(sod, method="plain"))
    all_results.append(res)
    failures += plain_report.outcome != "diverged"

    for problem in ("sod_modified", "woodward_colella"):
        print(f"\n--- {problem}: BP-RK4 ---")
        report, res = timed_run(load(problem))
        all_results.append(res)
        failures += not report.completed

    print("\n--- ENTROPY DISSIPATION ---")
    for res in all_results:
        if res['outcome'] == "completed" and res['max_sigma_increase'] is not None:
            ok = res['max_sigma_increase'] <= SIGMA_TOLERANCE
            failures += not ok
            print(f"  {res['label']}: {'PASS' if ok else 'FAIL'}")

    print("\n--- EXPORTING RESULTS TO CSV ---")
    for csv_file in export_comparison_3(all_results, gamma_rows):
        print(f"  Saved: {csv_file}")

    print("\n" + "="*70)
    print(f"COMPARISON 3 COMPLETE ({'PASS' if failures == 0 else f'{failures} FAILED'})")
    print("="*70)


if __name__ == "__main__":
    main()
