"""
COMPARISON 1: Time-step convergence on smooth advection
========================================================
Compares: plain RK vs BP-RK (DMP bounds), schemes rk1..rk4
Problem: advection_smooth, n=32, t_end=10 (rk1 at t_end=1)
Metric: L2 error at t_end, fitted order of log(error) vs log(dt)
"""

import sys
import os
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from dataclasses import replace
import logging
import time

from driver.config_types import config_from_mapping
from driver.parser import parse_config_file
from driver.runner import convergence_study
from experiments.csv_exporter import export_comparison_1

CONFIG_DIR = os.path.join(project_root, "experiments", "configs")

# ordenes observados en la tabla de referencia y tolerancia aceptada
TARGET_ORDERS = {"rk1": 1.005, "rk2": 2.000, "rk3": 3.002, "rk4": 3.959}
ORDER_TOLERANCE = 0.15


def load(name):
    return config_from_mapping(parse_config_file(os.path.join(CONFIG_DIR, name)))


def study(config, method):
    print(f"\n{'='*70}")
    print(f"Convergence: {method}, schemes {', '.join(config.schemes)}, dts {config.dts}")
    print(f"{'='*70}")
    start = time.perf_counter()
    rows = convergence_study(replace(config, method=method, label=f"comp1_{method}_{'_'.join(config.schemes)}"))
    elapsed = time.perf_counter() - start
    for r in rows:
        order = "" if r.observed_order is None else f"{r.observed_order:.3f}"
        print(f"  {r.scheme:>4} dt={r.dt:<10.3e} L2={r.l2_error:.6e}  order={order}")
    print(f"  Time: {elapsed:.1f}s")
    return rows


def main():
    logging.basicConfig(level=logging.INFO, format="[%(levelname)s] %(name)s: %(message)s")
    print("="*70)
    print("COMPARISON 1: CONVERGENCE OF PLAIN RK AND BP-RK")
    print("="*70)

    all_rows = []
    for cfg in ("comp1_advection_convergence.cfg", "comp1_advection_convergence_rk1.cfg"):
        config = load(cfg)
        for method in ("plain", "bp"):
            all_rows.extend(study(config, method))

    print("\n--- FITTED ORDERS ---")
    failures = 0
    seen = set()
    for r in all_rows:
        if (r.scheme, r.method) in seen:
            continue
        seen.add((r.scheme, r.method))
        target = TARGET_ORDERS[r.scheme]
        ok = r.fitted_order is not None and abs(r.fitted_order - target) <= ORDER_TOLERANCE
        if r.method == "bp" and not ok:
            failures += 1
        verdict = "PASS" if ok else "FAIL"
        fitted = "n/a" if r.fitted_order is None else f"{r.fitted_order:.3f}"
        print(f"  {r.method:>5}-{r.scheme}: {fitted}  (target {target:.3f})  [{verdict}]")

    print("\n--- EXPORTING RESULTS TO CSV ---")
    for csv_file in export_comparison_1(all_rows):
        print(f"  Saved: {csv_file}")

    print("\n" + "="*70)
    print(f"COMPARISON 1 COMPLETE ({'PASS' if failures == 0 else f'{failures} FAILED'})")
    print("="*70)


if __name__ == "__main__":
    main()
