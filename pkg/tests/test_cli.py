from pathlib import Path

import pytest

from wsncoverage.experiments.cli import main

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

MC_SWEEP = """
[experiment]
name = mc_demo
region_radius = 1000
sweep = nodes
grid = 500,1000
methods = both
trials = 15
targets = 1000
seed = 99

[model boolean]
type = boolean
radius = 50

[model elfes]
type = elfes
decay_rate = 0.02
max_range = 50
"""


def test_analytic_value(capsys):
    rc = main(["analytic", "--model", "boolean", "--radius", "50", "--nodes", "949", "--quiet"])
    assert rc == 0
    value = float(capsys.readouterr().out.strip())
    assert 0.9065 <= value <= 0.9075


def test_analytic_density_route(capsys):
    rc = main([
        "analytic", "--model", "elfes", "--decay-rate", "0.03", "--max-range", "50",
        "--density", str(1000.0 / (3.141592653589793 * 1e6)), "--quiet",
    ])
    assert rc == 0
    value = float(capsys.readouterr().out.strip())
    assert value == pytest.approx(0.6257, abs=1e-4)


def test_plan_reports_both_budgets(capsys):
    rc = main(["plan", "--model", "boolean", "--radius", "50", "--target-coverage", "0.9069"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "949 nodes" in out
    assert "363 cells" in out


def test_plan_quiet_output(capsys):
    rc = main([
        "plan", "--model", "boolean", "--radius", "50",
        "--target-coverage", "0.9069", "--quiet",
    ])
    assert rc == 0
    assert capsys.readouterr().out.split() == ["949", "363"]


def test_plan_flags_unreachable_regular(capsys):
    rc = main(["plan", "--model", "boolean", "--radius", "50", "--target-coverage", "0.95"])
    assert rc == 0
    assert "unreachable" in capsys.readouterr().out


def test_sweep_writes_outputs(tmp_path, capsys):
    csv_path = tmp_path / "cmp.csv"
    svg_path = tmp_path / "cmp.svg"
    rc = main([
        "sweep", "--config", str(CONFIG_DIR / "model_comparison.ini"),
        "--out", str(csv_path), "--svg", str(svg_path),
    ])
    assert rc == 0
    assert csv_path.exists() and svg_path.exists()
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("experiment,model,sweep_param")
    assert len(lines) == 1 + 6 * 31
    assert "wrote" in capsys.readouterr().out


def test_sweep_quiet(tmp_path, capsys):
    rc = main([
        "sweep", "--config", str(CONFIG_DIR / "placement_tradeoff.ini"),
        "--out", str(tmp_path / "t.csv"), "--svg", str(tmp_path / "t.svg"), "--quiet",
    ])
    assert rc == 0
    assert capsys.readouterr().out == ""


def test_sweep_determinism_across_worker_counts(tmp_path):
    config = tmp_path / "mc.ini"
    config.write_text(MC_SWEEP)
    out1, out2 = tmp_path / "w1.csv", tmp_path / "w3.csv"
    assert main(["sweep", "--config", str(config), "--out", str(out1), "--workers", "1", "--quiet"]) == 0
    assert main(["sweep", "--config", str(config), "--out", str(out2), "--workers", "3", "--quiet"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_seed_override_changes_mc(tmp_path):
    config = tmp_path / "mc.ini"
    config.write_text(MC_SWEEP)
    base, other = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["sweep", "--config", str(config), "--out", str(base), "--quiet"])
    main(["sweep", "--config", str(config), "--out", str(other), "--seed", "123", "--quiet"])
    assert base.read_bytes() != other.read_bytes()


def test_simulate_summary_and_row(tmp_path, capsys):
    out = tmp_path / "sim.csv"
    rc = main([
        "simulate", "--model", "boolean", "--radius", "50", "--nodes", "300",
        "--trials", "10", "--targets", "500", "--seed", "4", "--out", str(out),
    ])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "coverage" in printed and "philox4x64" in printed
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[0] == "simulate" and fields[3] == "300"


def test_export_deployment(tmp_path, capsys):
    out = tmp_path / "dep.csv"
    rc = main([
        "export-deployment", "--strategy", "uniform", "--nodes", "50",
        "--seed", "42", "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "index,x_m,y_m"
    assert len(lines) == 51


def test_export_hex_deployment(tmp_path):
    out = tmp_path / "hex.csv"
    rc = main([
        "export-deployment", "--strategy", "hex", "--cell-radius", "50",
        "--region-radius", "500", "--out", str(out),
    ])
    assert rc == 0
    assert len(out.read_text().splitlines()) > 50


class TestExitCodes:
    def test_missing_model_parameter_is_config_error(self, capsys):
        assert main(["analytic", "--model", "boolean", "--nodes", "10"]) == 1
        assert "config error" in capsys.readouterr().err

    def test_missing_config_file(self, capsys):
        assert main(["sweep", "--config", "/no/such/file.ini"]) == 1

    def test_invalid_config_contents(self, tmp_path, capsys):
        bad = tmp_path / "bad.ini"
        bad.write_text("[experiment]\nregion_radius = 1000\nsweep = nope\n")
        assert main(["sweep", "--config", str(bad)]) == 1

    def test_usage_error_exits_one(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["analytic", "--model", "bogus", "--nodes", "5"])
        assert excinfo.value.code == 1

    def test_runtime_error_exits_two(self, capsys):
        rc = main(["analytic", "--model", "boolean", "--radius", "2000", "--nodes", "10"])
        assert rc == 2
        assert "error" in capsys.readouterr().err

    def test_io_error_exits_three(self, tmp_path, capsys):
        # target path is a directory: the final rename must fail
        rc = main([
            "export-deployment", "--strategy", "uniform", "--nodes", "5",
            "--out", str(tmp_path),
        ])
        assert rc == 3
        assert "i/o error" in capsys.readouterr().err
