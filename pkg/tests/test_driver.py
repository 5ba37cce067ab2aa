#!/usr/bin/env python3

import sys
import os
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

import glob

import numpy as np
import pytest

from bprk.core.errors import ConfigError, ConsistencyError, DomainError, VacuumError
from bprk.core.grid_state import Grid, GridState
from bprk.core.solver_manager import SolverManager
from bprk.physics.euler import primitive_to_conservative
from driver.cli import main
from driver.config_types import RunConfig, config_from_mapping
from driver.output import emit_snapshot
from driver.parser import parse_config_file, parse_config_text, parse_override
from driver.runner import convergence_study, fitted_order, run

CONFIG_DIR = os.path.join(os.path.dirname(__file__), '..', 'experiments', 'configs')

SAMPLE_CONFIG = """
# corrida de prueba
problem = sod
n = 64          # nodos por unidad
dts = 0.01, 0.005, 2.5e-3
snapshot = false
label = "my run"
out = experiments/results
"""


def read_lines(path):
    with open(path, "r", encoding="utf-8") as f:
        return f.read().splitlines()


# ==== parser ====

def test_parse_config_text():
    print("=" * 70)
    print("TEST: CONFIG PARSER")
    print("=" * 70)
    parsed = parse_config_text(SAMPLE_CONFIG)
    print(f"   {parsed}")
    assert parsed == {"problem": "sod", "n": 64, "dts": [0.01, 0.005, 2.5e-3], "snapshot": False,
                      "label": "my run", "out": "experiments/results"}
    assert list(parsed) == ["problem", "n", "dts", "snapshot", "label", "out"]
    assert parse_config_text("") == {}
    assert parse_config_text("# solo comentarios\n") == {}


@pytest.mark.parametrize("text", ["n = 1\nn = 2", "n == 3", "n = ", "= 3", "Problem = sod"])
def test_parse_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_parse_override():
    assert parse_override("dt=1e-3") == {"dt": 1e-3}
    assert parse_override("scheme = rk2") == {"scheme": "rk2"}
    with pytest.raises(ConfigError):
        parse_override("n32")


def test_parse_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        parse_config_file(str(tmp_path / "missing.cfg"))


def test_experiment_configs_are_valid():
    paths = sorted(glob.glob(os.path.join(CONFIG_DIR, "*.cfg")))
    assert paths
    for path in paths:
        config = config_from_mapping(parse_config_file(path)).resolved()
        print(f"   {os.path.basename(path)} -> {config.label}")
        assert config.out == "experiments/results"


# ==== configuracion ====

def test_config_from_mapping_coerces_values():
    config = config_from_mapping({"problem": "sod", "n": 64.0, "dts": 0.01, "t_end": 1})
    assert config.n == 64 and isinstance(config.n, int)
    assert config.dts == [0.01]
    assert config.t_end == 1.0 and isinstance(config.t_end, float)
    updated = config_from_mapping({"scheme": "rk2"}, base=config)
    assert updated.scheme == "rk2" and updated.n == 64


@pytest.mark.parametrize("mapping", [
    {"problem": "sod", "colour": "red"},
    {"problem": "sod", "n": 3.5},
    {"problem": "sod", "snapshot": "yes"},
    {"problem": "sod", "dt": [0.1, 0.2]},
    {"n": 32},
])
def test_config_from_mapping_errors(mapping):
    with pytest.raises(ConfigError):
        config_from_mapping(mapping)


def test_resolved_fills_problem_defaults():
    config = RunConfig("sod").resolved()
    assert (config.n, config.dt, config.t_end, config.bounds) == (128, 1e-3, 0.2, "idp")
    assert config.label == "sod_bp_rk4_n128"


@pytest.mark.parametrize("overrides", [
    {"n": 48}, {"dt": 0.0}, {"t_end": -1.0}, {"scheme": "rk5"}, {"method": "exact"},
    {"bounds": "box"}, {"gamma_mode": "exact"}, {"cadence": 0}, {"dts": [0.1, -0.1, 0.05]},
    {"euler_form": "sinh"},
])
def test_resolved_rejects_invalid_values(overrides):
    with pytest.raises(ConfigError):
        RunConfig("advection_smooth", **overrides).resolved()


# ==== salida ====

def test_emit_snapshot_scalar(tmp_path):
    grid = Grid(4, [(0.0, 1.0)])
    path = emit_snapshot(GridState(grid, np.arange(4.0)), str(tmp_path / "s.csv"), comments=["hola"])
    lines = read_lines(path)
    assert lines[0] == "# hola"
    assert lines[1] == "x,u"
    assert len(lines[2:]) == 4
    assert lines[3].split(",") == ["0.25", "1"]


def test_emit_snapshot_euler_1d(tmp_path):
    grid = Grid(4, [(0.0, 1.0)])
    values = primitive_to_conservative(np.tile(np.array([[1.0], [0.5], [1.0]]), (1, 4)))
    lines = read_lines(emit_snapshot(GridState(grid, values), str(tmp_path / "e.csv"), is_euler=True))
    assert lines[0] == "x,rho,rho_v,E,v,P"
    row = [float(v) for v in lines[1].split(",")]
    assert row[4] == pytest.approx(0.5) and row[5] == pytest.approx(1.0)


def test_emit_snapshot_euler_2d(tmp_path):
    grid = Grid(8, [(0.0, 1.0), (0.0, 1.0)])
    values = np.zeros((4,) + grid.shape)
    values[0], values[3] = 1.0, 2.5
    lines = read_lines(emit_snapshot(GridState(grid, values), str(tmp_path / "e2.csv"), is_euler=True))
    assert lines[0] == "x,y,rho,rho_u,rho_v,E,u,v,P"
    assert len(lines) == 65
    # orden por filas: y varia mas rapido
    assert lines[1].split(",")[:2] == ["0", "0"]
    assert lines[2].split(",")[:2] == ["0", "0.125"]


def test_unwritable_output_names_the_path(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    path = str(blocker / "snapshot.csv")
    with pytest.raises(OSError) as excinfo:
        emit_snapshot(GridState(Grid(4, [(0.0, 1.0)]), np.zeros(4)), path)
    assert path in str(excinfo.value)


# ==== corridas ====

def test_run_writes_timeseries_and_snapshot(tmp_path):
    print("=" * 70)
    print("TEST: RUN ADVECTION")
    print("=" * 70)
    config = RunConfig("advection_smooth", n=16, dt=0.003, t_end=0.01, cadence=2, method="plain",
                       out=str(tmp_path))
    report = run(config)
    print(f"   outcome={report.outcome} steps={report.steps} files={report.files}")
    assert report.completed and report.exit_code == 0
    assert report.steps == 4
    assert report.final_state.time == pytest.approx(0.01, abs=1e-14)
    assert [row.step for row in report.rows] == [0, 2, 4]
    assert np.all(np.diff([row.t for row in report.rows]) > 0.0)
    assert len(report.files) == 2 and all(os.path.exists(p) for p in report.files)

    lines = read_lines(report.files[0])
    assert lines[0].startswith("# problem=advection_smooth method=plain")
    assert any(line.startswith("# deviation:") for line in lines)
    assert "# outcome=completed" in lines
    header = [line for line in lines if not line.startswith("#")][0]
    assert header.split(",") == ["step", "t", "mass_residual_0", "sbar_norm", "min_bound_distance",
                                 "sigma_total", "l1_error", "l2_error", "fallback"]
    l1, l2 = report.final_error()
    assert 0.0 <= l1 < 1e-6 and 0.0 <= l2 < 1e-6


def test_bounded_burgers_run_conserves_mass():
    config = RunConfig("burgers_sine", n=16, dt=1e-3, t_end=0.02)
    rows = []
    report = run(config, write=False, on_row=rows.append)
    assert report.completed
    assert report.max_mass_residual <= 1e-12
    assert len(rows) == len(report.rows) and all(a is b for a, b in zip(rows, report.rows))
    assert report.final_error() is None
    assert report.files == []


def test_sod_run_records_entropy():
    report = run(RunConfig("sod", n=32, t_end=0.01), write=False)
    assert report.completed
    assert all(row.sigma_total is not None for row in report.rows)
    assert report.max_sigma_increase is not None


def test_plain_euler_failure_is_an_outcome():
    report = run(RunConfig("woodward_colella", n=16, dt=1e-3, t_end=0.012, method="plain"), write=False)
    assert report.outcome == "diverged"
    assert report.exit_code == 2
    assert report.message



def broken_bounds(self, state):
    raise DomainError("rho <= 0 in auxiliary state")


def vacuum_bounds(self, state):
    raise VacuumError("pressure positivity condition violated")


def test_internal_error_is_not_an_outcome(monkeypatch):
    monkeypatch.setattr(SolverManager, "build_bounds", broken_bounds)
    with pytest.raises(ConsistencyError):
        run(RunConfig("sod", n=16, t_end=0.002), write=False)


def test_vacuum_in_bounds_is_a_divergence(monkeypatch):
    monkeypatch.setattr(SolverManager, "build_bounds", vacuum_bounds)
    report = run(RunConfig("sod", n=16, t_end=0.002), write=False)
    assert report.outcome == "diverged"
    assert "positivity" in report.message

# ==== convergencia ====

def test_fitted_order():
    dts = np.array([0.1, 0.05, 0.025])
    assert fitted_order(dts, 3.0 * dts ** 2) == pytest.approx(2.0)


@pytest.mark.parametrize("problem,dts", [
    ("burgers_sine", [0.01, 0.005, 0.0025]),
    ("advection_smooth", [0.01, 0.005]),
    ("advection_smooth", [0.01, 0.01, 0.005]),
])
def test_convergence_study_errors(problem, dts):
    with pytest.raises(ConfigError):
        convergence_study(RunConfig(problem, n=16, t_end=0.1), dts=dts, write=False)


def test_convergence_study_plain_rk4(tmp_path):
    print("=" * 70)
    print("TEST: CONVERGENCE STUDY")
    print("=" * 70)
    base = RunConfig("advection_smooth", n=16, t_end=0.5, method="plain", scheme="rk4", out=str(tmp_path))
    rows = convergence_study(base, dts=[0.02, 0.01, 0.005])
    for row in rows:
        print(f"   {row}")
    assert [row.dt for row in rows] == [0.02, 0.01, 0.005]
    assert rows[0].observed_order is None
    assert all(abs(row.observed_order - 4.0) < 0.2 for row in rows[1:])
    assert abs(rows[0].fitted_order - 4.0) < 0.2
    assert all(row.monotone for row in rows)
    assert os.path.exists(tmp_path / "advection_smooth_plain_rk4_n16_convergence.csv")


# ==== CLI ====

def test_cli_list_problems(capsys):
    assert main(["list-problems"]) == 0
    assert "woodward_colella" in capsys.readouterr().out


def test_cli_run_with_overrides(tmp_path, capsys):
    code = main(["run", "advection_smooth", "--set", "n=16", "--set", "t_end=0.01", "--set", "method=plain",
                 "--out", str(tmp_path)])
    assert code == 0
    assert "Outcome: completed" in capsys.readouterr().out
    assert os.path.exists(tmp_path / "advection_smooth_plain_rk4_n16_timeseries.csv")


def test_cli_config_errors(capsys):
    assert main(["run", "blast"]) == 4
    assert main(["run", "--set", "n=16"]) == 4
    assert "[ERROR]" in capsys.readouterr().out


def test_cli_internal_error(monkeypatch, capsys):
    monkeypatch.setattr(SolverManager, "build_bounds", broken_bounds)
    assert main(["run", "sod", "--set", "n=16", "--set", "t_end=0.002"]) == 5
    assert "[INTERNAL ERROR]" in capsys.readouterr().out
