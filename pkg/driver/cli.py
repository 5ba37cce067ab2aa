#!/usr/bin/env python3
import argparse
import logging
import sys

from bprk.core.errors import ConfigError, ConsistencyError
from bprk.problems.library import ic_library, list_problems

from .config_types import RunConfig, config_from_mapping
from .parser import parse_config_file, parse_override
from .runner import convergence_study, run

EXIT_CONFIG = 4
EXIT_INTERNAL = 5


# ================= util UI =================
def banner(title: str) -> None:
    print(f"\n== {title} ==\n")


def format_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.6e}"
    return str(value)


def print_report(report) -> None:
    last = report.rows[-1] if report.rows else None
    print(f"Outcome: {report.outcome}  (steps={report.steps}, t={report.final_state.time:.6g})")
    if report.message:
        print(f"  {report.message}")
    if last is not None:
        print(f"  max |mass residual| (rel): {report.max_mass_residual:.3e}")
        print(f"  |S| = {format_value(last.sbar_norm)}   min bound distance = {format_value(last.min_bound_distance)}")
        print(f"  L1 = {format_value(last.l1_error)}   L2 = {format_value(last.l2_error)}")
        if last.sigma_total is not None:
            print(f"  sigma = {format_value(last.sigma_total)}   max increase = {format_value(report.max_sigma_increase)}")
    if report.fallback_count:
        print(f"  gamma fallback triggered in {report.fallback_count} steps")
    for path in report.files:
        print(f"  -> {path}")


def print_convergence(rows) -> None:
    print(f"{'scheme':>6} {'method':>6} {'dt':>10} {'L2 error':>14} {'order':>7}")
    for r in rows:
        order = "" if r.observed_order is None else f"{r.observed_order:.3f}"
        print(f"{r.scheme:>6} {r.method:>6} {r.dt:>10.3e} {r.l2_error:>14.6e} {order:>7}")
    fitted = {}
    for r in rows:
        fitted[r.scheme] = (r.fitted_order, r.monotone)
    for scheme, (order, monotone) in fitted.items():
        flag = "" if monotone else "  [NON-MONOTONE]"
        print(f"  fitted order {scheme}: {format_value(order)}{flag}")


# ================= config =================
def load_config(args) -> RunConfig:
    mapping = {}
    if args.config:
        mapping.update(parse_config_file(args.config))
    if getattr(args, "problem", None):
        mapping["problem"] = args.problem
    config = config_from_mapping(mapping) if "problem" in mapping else None
    for item in args.set or []:
        override = parse_override(item)
        if config is None:
            if "problem" not in override:
                raise ConfigError("No problem given: use --config, a positional problem name or --set problem=...")
            config = config_from_mapping(override)
        else:
            config = config_from_mapping(override, base=config)
    if config is None:
        raise ConfigError("No problem given: use --config, a positional problem name or --set problem=...")
    if args.out:
        config = config_from_mapping({"out": args.out}, base=config)
    return config


# ================= comandos =================
def cmd_run(args) -> int:
    config = load_config(args).resolved()
    banner(f"RUN {config.label}")
    report = run(config)
    print_report(report)
    return report.exit_code


def cmd_converge(args) -> int:
    config = load_config(args).resolved()
    banner(f"CONVERGENCE {config.label}")
    rows = convergence_study(config)
    print_convergence(rows)
    return 0


def cmd_list_problems(args) -> int:
    banner("PROBLEMS")
    for name in list_problems():
        spec = ic_library(name)
        print(f"  {name:<18} {spec.dims}D  {spec.equation!r:<24} n={spec.n:<4} dt={spec.dt:<8g} "
              f"t_end={spec.t_end:<6g} bounds={spec.bounds}")
        if spec.description:
            print(f"  {'':<18} {spec.description}")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="python -m driver.cli",
                                 description="Bounds-preserving Runge-Kutta runs on Fourier pseudospectral grids")
    ap.add_argument("--verbose", "-v", action="store_true", help="Log per-step diagnostics (DEBUG)")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, handler, help_text in (("run", cmd_run, "Integrate one problem to t_end"),
                                     ("converge", cmd_converge, "Time-step convergence study")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", nargs="?", help="Problem name (see list-problems)")
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="Override one key (repeatable)")
        p.add_argument("--out", help="Output directory")
        p.set_defaults(handler=handler)

    p = sub.add_parser("list-problems", help="List the built-in test problems")
    p.set_defaults(handler=cmd_list_problems)
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="[%(levelname)s] %(name)s: %(message)s")
    try:
        return args.handler(args)
    except ConfigError as e:
        print(f"[ERROR] {e}")
        return EXIT_CONFIG
    except ConsistencyError as e:
        print(f"[INTERNAL ERROR] {e}")
        return EXIT_INTERNAL
    except OSError as e:
        print(f"[ERROR] {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
