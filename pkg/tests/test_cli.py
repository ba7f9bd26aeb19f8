"""CLI behavior: flag/file layering, outputs, exit codes."""

import json
import subprocess
import sys

import pytest

from bubblesim import CSV_HEADER, ModelParams, read_trajectory_csv, simulate
from bubblesim.cli import ConfigError, main, parse_seed_range, parse_value_list


def _run(*argv):
    return main(list(argv))


# ---------------------------------------------------------------- parsing


def test_seed_range_parsing():
    assert parse_seed_range("0..2") == (0, 1, 2)
    assert parse_seed_range("7..7") == (7,)
    with pytest.raises(ConfigError):
        parse_seed_range("5..2")
    with pytest.raises(ConfigError):
        parse_seed_range("1-3")
    with pytest.raises(ConfigError):
        parse_seed_range("a..b")


def test_value_list_parsing():
    assert parse_value_list("0.0001,0.01,0.02") == (0.0001, 0.01, 0.02)
    with pytest.raises(ConfigError):
        parse_value_list("1,two,3")


# ---------------------------------------------------------------- simulate


def test_simulate_writes_three_files_by_default(tmp_path):
    out = tmp_path / "run"
    assert _run("simulate", "--seed", "42", "--out", str(out), "--T", "300") == 0
    assert (out / "trajectory.csv").exists()
    assert (out / "summary.json").exists()
    assert (out / "trajectory.svg").exists()


def test_no_plot_skips_the_svg(tmp_path):
    out = tmp_path / "run"
    assert _run("simulate", "--seed", "1", "--out", str(out), "--T", "200", "--no-plot") == 0
    assert not (out / "trajectory.svg").exists()
    assert (out / "trajectory.csv").exists()


def test_simulate_output_matches_the_library(tmp_path):
    out = tmp_path / "run"
    assert _run("simulate", "--seed", "5", "--out", str(out), "--T", "250", "--no-plot") == 0
    cols = read_trajectory_csv(out / "trajectory.csv")
    traj = simulate(ModelParams(T=250), 5)
    assert (cols["log_price"] == traj.log_price).all()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["seed"] == 5
    assert summary["config"]["params"]["T"] == 250


def test_constraint_violation_exits_1(tmp_path, capsys):
    assert _run("simulate", "--b", "-5", "--a", "-1", "--out", str(tmp_path)) == 1
    assert "requires a < b < c" in capsys.readouterr().err


def test_unknown_flag_exits_1(capsys):
    assert _run("simulate", "--bogus", "1") == 1


def test_help_exits_0(capsys):
    assert _run("--help") == 0
    assert _run("simulate", "--help") == 0


# ---------------------------------------------------------------- config file


def test_empty_config_is_the_stock_setup(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{}")
    out = tmp_path / "run"
    assert _run("simulate", "--config", str(cfg), "--out", str(out), "--no-plot",
                "--T", "200") == 0
    summary = json.loads((out / "summary.json").read_text())
    expected = ModelParams(T=200).as_dict()
    assert summary["config"]["params"] == expected


def test_flags_override_the_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"b": 0.01, "T": 200, "seed": 3}))
    out = tmp_path / "run"
    assert _run("simulate", "--config", str(cfg), "--b", "0.03", "--out", str(out), "--no-plot") == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["params"]["b"] == 0.03  # flag wins
    assert summary["config"]["params"]["T"] == 200  # file fills the rest
    assert summary["seed"] == 3


def test_unknown_config_key_exits_1_and_names_it(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus_key": 1, "T": 100}))
    assert _run("simulate", "--config", str(cfg), "--out", str(tmp_path / "o")) == 1
    assert "bogus_key" in capsys.readouterr().err


def test_config_constraint_violation_quotes_the_constraint(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"a": 2, "c": 1}))
    assert _run("simulate", "--config", str(cfg), "--out", str(tmp_path / "o")) == 1
    assert "requires a < b < c" in capsys.readouterr().err


def test_missing_or_invalid_config_exits_1(tmp_path, capsys):
    assert _run("simulate", "--config", str(tmp_path / "nope.json")) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run("simulate", "--config", str(bad)) == 1


def test_detector_overrides_reach_the_summary(tmp_path):
    out = tmp_path / "run"
    assert _run("simulate", "--seed", "1", "--T", "200", "--min-drawdown", "0.2",
                "--out", str(out), "--no-plot") == 0
    summary = json.loads((out / "summary.json").read_text())
    det = summary["config"]["detector"]
    assert det["min_drawdown"] == 0.2
    assert det["threshold"] == 0.02  # unset pieces keep their defaults


# ---------------------------------------------------------------- sweep


def test_sweep_writes_grid_and_plot(tmp_path, capsys):
    out = tmp_path / "sw"
    assert _run("sweep", "--axis", "b", "--values", "0.01,0.02", "--seeds", "0..2",
                "--T", "250", "--out", str(out)) == 0
    data = json.loads((out / "sweep.json").read_text())
    assert len(data["sweep"]["cells"]) == 6
    assert data["seed"] == [0, 1, 2]
    assert (out / "sweep.svg").exists()
    assert "median peak_log_price" in capsys.readouterr().out


def test_sweep_requires_axis_and_values(tmp_path, capsys):
    assert _run("sweep", "--values", "1,2", "--out", str(tmp_path)) == 1
    assert _run("sweep", "--axis", "b", "--out", str(tmp_path)) == 1


def test_sweep_axis_lambda_spelling(tmp_path):
    out = tmp_path / "sw"
    assert _run("sweep", "--axis", "lambda", "--values=-2.5,-2.0", "--seeds", "0..1",
                "--T", "250", "--out", str(out), "--no-plot") == 0
    data = json.loads((out / "sweep.json").read_text())
    assert data["sweep"]["axis"] == "Lambda"


def test_sweep_with_no_valid_cell_exits_1(tmp_path, capsys):
    assert _run("sweep", "--axis", "b", "--values", "1.5,2.5", "--seeds", "0..1",
                "--T", "250", "--out", str(tmp_path / "sw")) == 1
    assert "requires a < b < c" in capsys.readouterr().err


# ---------------------------------------------------------------- baseline


def test_baseline_subcommand_emits_all_outputs(tmp_path):
    out = tmp_path / "base"
    assert _run("baseline", "--seed", "0", "--out", str(out)) == 0
    for name in ("trajectory.csv", "summary.json", "trajectory.svg"):
        assert (out / name).exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["config"]["params"] == ModelParams().as_dict()


# ---------------------------------------------------------------- process


def test_io_failure_exits_2(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert _run("simulate", "--T", "100", "--out", str(blocker / "sub")) == 2


def test_console_script_runs_end_to_end(tmp_path):
    out = tmp_path / "run"
    proc = subprocess.run(
        [sys.executable, "-m", "bubblesim", "simulate", "--seed", "2", "--T", "120",
         "--out", str(out), "--no-plot"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header == CSV_HEADER
