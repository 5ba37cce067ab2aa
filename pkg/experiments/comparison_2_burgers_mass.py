"""
COMPARISON 2: Mass conservation on inviscid Burgers
===================================================
Compares: plain RK2 vs BP-RK2 (DMP bounds)
Problem: burgers_sine, n=64, dt=1e-3, t=1 (shock forms before t=1)
Metrics: mass residual and |S| history, bounds violations of the plain run
"""

import sys
import os
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from dataclasses import replace
import logging

import numpy as np

from driver.config_types import config_from_mapping
from driver.parser import parse_config_file
from driver.runner import run
from experiments.csv_exporter import export_comparison_2

MASS_TOLERANCE = 1e-12


def main():
    logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(name)s: %(message)s")
    print("="*70)
    print("COMPARISON 2: BURGERS MASS RESIDUAL AND MASS DEFECT")
    print("="*70)

    config = config_from_mapping(parse_config_file(os.path.join(project_root, "experiments", "configs",
                                                                "comp2_burgers.cfg")))

    print("\n--- BP-RK2 ---")
    bp = run(replace(config, method="bp"))
    residuals = [abs(float(r.mass_residual[0])) for r in bp.rows]
    sbar = [r.sbar_norm for r in bp.rows if r.sbar_norm is not None]
    print(f"  Outcome: {bp.outcome} after {bp.steps} steps")
    print(f"  max |mass residual|: {max(residuals):.3e}")
    print(f"  max |S|: {max(sbar) if sbar else 0.0:.3e}")
    final = bp.final_state.values[0]
    print(f"  final range: [{final.min():.6f}, {final.max():.6f}]")
    mass_ok = bp.completed and bp.max_mass_residual <= MASS_TOLERANCE

    print("\n--- Plain RK2 ---")
    plain = run(replace(config, method="plain"))
    values = plain.final_state.values[0]
    overshoot = max(values.max() - 3.0, 1.0 - values.min(), 0.0)
    print(f"  Outcome: {plain.outcome} after {plain.steps} steps")
    print(f"  final range: [{values.min():.6f}, {values.max():.6f}]  overshoot of [1, 3]: {overshoot:.3e}")
    print(f"  max |mass residual|: {plain.max_mass_residual:.3e}")

    print("\n--- EXPORTING RESULTS TO CSV ---")
    for csv_file in export_comparison_2(bp):
        print(f"  Saved: {csv_file}")

    print("\n" + "="*70)
    print(f"COMPARISON 2 COMPLETE (mass conservation {'PASS' if mass_ok else 'FAIL'}, "
          f"bp inside [1, 3]: {'PASS' if np.all((final >= 1.0 - 1e-6) & (final <= 3.0 + 1e-6)) else 'FAIL'})")
    print("="*70)


if __name__ == "__main__":
    main()
