import csv
import os
from datetime import datetime


def _timestamped(output_dir, stem):
    os.makedirs(output_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return os.path.join(output_dir, f"{stem}_{timestamp}.csv")


def export_comparison_1(all_results, output_dir="experiments/results"):
    """all_results: list of ConvergenceRow from the plain and bp studies."""
    table_file = _timestamped(output_dir, "comp1_convergence")
    with open(table_file, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['Scheme', 'Method', 'dt', 'L2_Error', 'Observed_Order', 'Fitted_Order', 'Monotone'])
        for row in all_results:
            writer.writerow([
                row.scheme,
                row.method,
                row.dt,
                row.l2_error,
                row.observed_order,
                row.fitted_order,
                row.monotone
            ])
    return [table_file]


def export_comparison_2(report, output_dir="experiments/results"):
    history_file = _timestamped(output_dir, "comp2_burgers_mass")
    with open(history_file, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['Step', 't', 'Mass_Residual', 'Sbar_Norm', 'Min_Bound_Distance'])
        for row in report.rows:
            writer.writerow([
                row.step,
                row.t,
                row.mass_residual[0],
                row.sbar_norm,
                row.min_bound_distance
            ])
    return [history_file]


def export_comparison_3(all_results, gamma_rows, output_dir="experiments/results"):
    """all_results: dicts with label, outcome, steps, l1_error, max_sigma_increase, fallbacks, time_ms."""
    runs_file = _timestamped(output_dir, "comp3_shock_tubes")
    with open(runs_file, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['Run', 'Outcome', 'Steps', 'L1_Density_Error', 'Max_Sigma_Increase', 'Fallbacks', 'Time_ms'])
        for res in all_results:
            writer.writerow([
                res['label'],
                res['outcome'],
                res['steps'],
                res['l1_error'],
                res['max_sigma_increase'],
                res['fallbacks'],
                res['time_ms']
            ])

    gamma_file = _timestamped(output_dir, "comp3_gamma_star_vs_double_star")
    with open(gamma_file, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['x', 'gamma_star_numeric', 'gamma_double_star', 'ratio'])
        for x, numeric, analytic in gamma_rows:
            writer.writerow([x, numeric, analytic, numeric / analytic if analytic > 0 else ''])

    return [runs_file, gamma_file]


def export_comparison_4(all_results, output_dir="experiments/results"):
    runs_file = _timestamped(output_dir, "comp4_riemann_2d")
    with open(runs_file, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['Problem', 'Grid', 'Outcome', 'Steps', 'Min_Density', 'Min_Pressure',
                         'Max_Rel_Mass_Residual', 'Time_s'])
        for res in all_results:
            writer.writerow([
                res['problem'],
                res['grid'],
                res['outcome'],
                res['steps'],
                res['min_density'],
                res['min_pressure'],
                res['max_mass_residual'],
                res['time_s']
            ])
    return [runs_file]
