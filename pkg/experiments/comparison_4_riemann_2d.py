"""
COMPARISON 4: Two-dimensional Euler runs
=========================================
Problems: riemann2d_case12 (256^2 nodes after mirroring), kelvin_helmholtz (128^2)
Method: BP-RK4 with IDP bounds
Checks: no NaN, positive density and pressure, mass conserved to 1e-12 relative
"""

import sys
import os
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

import logging
import time

import numpy as np

from bprk.physics.euler import pressure
from driver.config_types import config_from_mapping
from driver.parser import parse_config_file
from driver.runner import run
from experiments.csv_exporter import export_comparison_4

CONFIG_DIR = os.path.join(project_root, "experiments", "configs")
MASS_TOLERANCE = 1e-12


def test_problem(cfg_name):
    config = config_from_mapping(parse_config_file(os.path.join(CONFIG_DIR, cfg_name)))
    print(f"\n{'='*70}")
    print(f"Running {config.problem}")
    print(f"{'='*70}")

    start = time.perf_counter()
    report = run(config)
    elapsed = time.perf_counter() - start

    values = report.final_state.values
    rho = values[0]
    p = pressure(values)
    finite = bool(np.all(np.isfinite(values)))
    print(f"  Outcome: {report.outcome} after {report.steps} steps ({elapsed:.1f}s)")
    print(f"  Grid: {report.final_state.grid.shape}")
    print(f"  min rho = {rho.min():.4e}, min P = {p.min():.4e}")
    print(f"  max rel. mass residual = {report.max_mass_residual:.3e}")
    if report.fallback_count:
        print(f"  gamma fallback triggered in {report.fallback_count} steps")

    passed = (report.completed and finite and rho.min() > 0.0 and p.min() > 0.0
              and report.max_mass_residual <= MASS_TOLERANCE)
    print(f"  [{'PASS' if passed else 'FAIL'}]")
    return passed, {
        'problem': config.problem,
        'grid': "x".join(str(s) for s in report.final_state.grid.shape),
        'outcome': report.outcome,
        'steps': report.steps,
        'min_density': float(rho.min()),
        'min_pressure': float(p.min()),
        'max_mass_residual': report.max_mass_residual,
        'time_s': elapsed,
    }


def main():
    logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(name)s: %(message)s")
    print("="*70)
    print("COMPARISON 4: 2D RIEMANN PROBLEM AND KELVIN-HELMHOLTZ")
    print("="*70)

    all_results = []
    failures = 0
    for cfg in ("comp4_riemann2d_case12.cfg", "comp4_kelvin_helmholtz.cfg"):
        passed, results = test_problem(cfg)
        failures += not passed
        all_results.append(results)

    print("\n--- EXPORTING RESULTS TO CSV ---")
    for csv_file in export_comparison_4(all_results):
        print(f"  Saved: {csv_file}")

    print("\n" + "="*70)
    print(f"COMPARISON 4 COMPLETE ({'PASS' if failures == 0 else f'{failures} FAILED'})")
    print("="*70)


if __name__ == "__main__":
    main()
