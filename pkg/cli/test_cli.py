import os
import sys
import json
import tempfile
import subprocess
from pathlib import Path
import numpy as np
import pytest

import settings
from config import opts
from cli.cli_main import run
from cli.sweep import SweepSpec, run_sweep, sweep_table
from cli.writers import read_csv
from utils.util_class import WrongInputException


def run_main(*argv):
    return subprocess.run([sys.executable, os.path.join(opts.PROJECT_ROOT, "main.py"), *argv],
                          cwd=opts.PROJECT_ROOT, capture_output=True, text=True, timeout=600)


def load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def assert_units_for_all_columns(path):
    with open(path, "r", encoding="utf-8") as handle:
        units = [line[len("# unit "):].split(":")[0] for line in handle if line.startswith("# unit ")]
    assert units == list(read_csv(path).columns)


def test_criteria_report_file(tmp_path):
    out = str(tmp_path / "criteria.json")
    assert run(["criteria", "--omega0", "1", "--omega", "-1", "--theta", "0.1", "--out", out]) == 0
    report = load_json(out)
    assert np.isclose(report["aPrioriValue"], 0.0998334, atol=1e-7)
    assert np.isclose(report["aPosterioriEnvelope"], 0.99875, atol=1e-5)
    assert report["verdicts"]["aPriori"] and not report["verdicts"]["aPosteriori"]
    assert {"omegaBar", "beta", "aPrioriGeneric"} <= set(report.keys())

    assert run(["criteria", "--omega", "0", "--theta", "0.3", "--out", out]) == 0
    report = load_json(out)
    assert report["aPosterioriEnvelope"] == 0.
    assert report["verdicts"]["aPriori"] and report["verdicts"]["aPosteriori"]
    assert report["escapeTime"] == "inf"

    assert run(["criteria", "--omega", "1", "--theta", "0.1", "--out", out]) == 0
    report = load_json(out)
    assert np.isclose(report["aPosterioriEnvelope"], 0.0499791, atol=1e-7)
    assert report["verdicts"]["aPriori"] and report["verdicts"]["aPosteriori"]
    print("!!! test_criteria_report_file passed")


def test_evolve_resonance(tmp_path):
    out = str(tmp_path / "evolve" / "resonance.csv")
    code = run(["evolve", "--omega0", "1", "--omega", "-1", "--theta", "0.1",
                "--t-final", str(40 * np.pi), "--samples", "4001", "--out", out])
    assert code == 0
    with open(out, "r", encoding="utf-8") as handle:
        header = [line for line in handle.readlines() if line.startswith("#")]
    assert opts.TOOL_VERSION in header[0]
    assert '"omega": -1.0' in header[1]
    table = read_csv(out)
    assert list(table.columns) == ["t", "re0", "im0", "re1", "im1", "fidelity", "deviation", "deviationEnvelope"]
    assert len(table) == 4001
    assert abs(table["fidelity"].min() - 0.04998) < 1e-4
    norms = table["re0"] ** 2 + table["im0"] ** 2 + table["re1"] ** 2 + table["im1"] ** 2
    assert np.abs(norms - 1.).max() < 2e-8
    assert_units_for_all_columns(out)
    print("!!! test_evolve_resonance passed")


def test_evolve_static_and_slow(tmp_path):
    out = str(tmp_path / "static.csv")
    assert run(["evolve", "--omega", "0.7", "--theta", "0", "--t-final", "20", "--tol", "1e-12", "--out", out]) == 0
    table = read_csv(out)
    assert np.abs(table["fidelity"] - 1.).max() < 1e-10
    assert run(["evolve", "--omega", "0.7", "--theta", "0", "--t-final", "30", "--out", out]) == 0
    assert np.abs(read_csv(out)["fidelity"] - 1.).max() < 1e-10

    out = str(tmp_path / "slow.csv")
    assert run(["evolve", "--omega", "1", "--theta", "0.1", "--t-final", str(20 * np.pi), "--out", out]) == 0
    table = read_csv(out)
    assert np.isclose(table["deviationEnvelope"].iloc[0], 0.0499791, atol=1e-7)
    assert table["deviation"].max() <= 0.0499791 + 1e-8
    print("!!! test_evolve_static_and_slow passed")


def test_sweep_rows(tmp_path):
    serial = str(tmp_path / "serial.csv")
    pooled = str(tmp_path / "pooled.csv")
    grid = ["--omega-range", "-1", "1", "3", "--theta-range", "0", "0.1", "2"]
    assert run(["sweep", *grid, "--workers", "1", "--out", serial]) == 0
    assert run(["sweep", *grid, "--workers", "2", "--out", pooled]) == 0
    assert Path(serial).read_bytes() == Path(pooled).read_bytes()
    sidecar = load_json(str(tmp_path / "serial.json"))
    assert sidecar["gridPoints"] == 6 and "timing" not in sidecar

    table = read_csv(serial)
    assert len(table) == 6
    resonance = table[(table["omega"] == -1.) & (table["theta"] == 0.1)].iloc[0]
    assert resonance["aPrioriValue"] < 0.1 and resonance["minFidelity"] < 0.1
    assert abs(resonance["minFidelity"] - 0.04998) < 1e-4
    assert resonance["verdictAPriori"] == 1 and resonance["verdictAPosteriori"] == 0
    assert np.isfinite(resonance["escapeTime"])
    slow = table[(table["omega"] == 1.) & (table["theta"] == 0.1)].iloc[0]
    assert slow["minFidelity"] >= 0.9987
    assert np.all(table[table["theta"] == 0.]["minFidelity"] == 1.)
    assert_units_for_all_columns(serial)
    print("!!! test_sweep_rows passed")


def test_sweep_numeric_cross_check(tmp_path):
    spec = SweepSpec(omega0=1., omega_range=(0.5, 1., 2), theta_range=(0.2, 0.4, 2), horizon=1, mode="both")
    records = run_sweep(spec, workers=1)
    table = sweep_table(records)
    assert np.all(table["maxAmplitudeError"] < 1e-7)
    assert np.all(table["normDrift"] < 1e-8)
    assert np.all(np.abs(table["numericMinFidelity"] - table["minFidelity"]) < 1e-3)
    assert all(record.timing is not None and record.timing >= 0 for record in records)

    out = str(tmp_path / "numeric.csv")
    assert run(["sweep", "--omega-range", "0.5", "1", "2", "--theta-range", "0.2", "0.4", "2",
                "--horizon", "1", "--mode", "numeric", "--workers", "1", "--out", out]) == 0
    assert len(load_json(str(tmp_path / "numeric.json"))["timing"]) == 4
    assert_units_for_all_columns(out)
    print("!!! test_sweep_numeric_cross_check passed")


def test_sweep_grid_errors():
    for kwargs in [dict(omega_range=(-1., 1., 1)), dict(omega_range=(1., -1., 3)),
                   dict(theta_range=(0., 2., 3)), dict(horizon=0), dict(mode="fast"), dict(tol=1e-3)]:
        values = dict(omega0=1., omega_range=(-1., 1., 3), theta_range=(0., 1., 3))
        values.update(kwargs)
        with pytest.raises(WrongInputException):
            SweepSpec(**values)
    assert run(["sweep", "--omega-range", "1", "-1", "3", "--workers", "1"]) == 2
    assert run(["sweep", "--horizon", "0", "--workers", "1"]) == 2
    print("!!! test_sweep_grid_errors passed")


def test_primed_report(tmp_path):
    out = str(tmp_path / "primed.json")
    assert run(["primed", "--omega", "1", "--theta", "0.1", "--out", out]) == 0
    report = load_json(out)
    assert abs(report["thetaPrimed"] - 0.05) < 1e-10
    assert abs(report["omegaPrimed"] + 1.9975005) < 1e-7
    assert abs(report["primedEnvelope"] - np.sin(0.1)) < 1e-10
    assert report["residual"] < 1e-6

    assert run(["primed", "--omega", "0.05", "--theta", "0.5", "--t-final", "40", "--out", out]) == 0
    report = load_json(out)
    assert abs(report["primedEnvelope"] - 0.4794) < 1e-4
    assert abs(report["aPrioriValue"] - 0.0240) < 1e-4
    assert report["residual"] < 1e-6

    assert run(["primed", "--omega", "0", "--theta", "0.4", "--tol", "1e-11", "--out", out]) == 0
    report = load_json(out)
    assert abs(report["thetaPrimed"]) < 1e-12 and np.isclose(report["omegaPrimed"], -1.)
    assert report["residual"] < 1e-8

    assert run(["primed", "--omega", "1", "--theta", "0.1", "--max-residual", "1e-30", "--out", out]) == 5
    print("!!! test_primed_report passed")


def test_scaling_cli(tmp_path):
    out = str(tmp_path / "scaling.csv")
    assert run(["scaling", "--out", out]) == 0
    table = read_csv(out)
    assert np.allclose(table["epsilon"], sorted(opts.SCALING_EPSILONS, reverse=True))
    slope, _ = np.polyfit(np.log(table["epsilon"]), np.log(table["error"]), 1)
    assert 0.8 <= slope <= 1.2
    assert_units_for_all_columns(out)
    assert run(["scaling", "--epsilons", "0.1", "0.01"]) == 2
    assert run(["scaling", "--epsilons", "0.5", "0.1", "0.01"]) == 2
    print("!!! test_scaling_cli passed")


def test_exit_codes_subprocess(tmp_path):
    result = run_main("criteria", "--omega", "-1", "--theta", "0", "--json")
    assert result.returncode == 4
    error = json.loads(result.stdout)["error"]
    assert error["code"] == 4 and "omega_bar" in error["message"]

    result = run_main("criteria", "--omega", "-1", "--theta", "0.1", "--json")
    assert result.returncode == 0
    assert np.isclose(json.loads(result.stdout)["aPrioriValue"], 0.0998334, atol=1e-7)

    assert run_main("criteria", "--theta", "abc").returncode == 2
    assert run_main("criteria", "--theta", "2.0", "--json").returncode == 2
    assert run_main("evolve", "--omega0", "-1").returncode == 2

    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    result = run_main("evolve", "--t-final", "1", "--samples", "11", "--out", str(blocker / "evolve.csv"))
    assert result.returncode == 3

    result = run_main("scaling", "--theta", "0", "--epsilons", "0.1", "0.03", "0.005")
    assert result.returncode == 0
    assert result.stdout.strip().splitlines()[-1] == "slope=not-applicable"
    print("!!! test_exit_codes_subprocess passed")


def test_closed_form_outputs_are_byte_identical(tmp_path):
    paths = [str(tmp_path / f"sweep{index}.csv") for index in range(2)]
    for path in paths:
        result = run_main("sweep", "--omega-range", "-2", "2", "5", "--theta-range", "0", "1.5", "4", "--out", path)
        assert result.returncode == 0
    assert Path(paths[0]).read_bytes() == Path(paths[1]).read_bytes()
    assert (tmp_path / "sweep0.json").read_bytes() == (tmp_path / "sweep1.json").read_bytes()
    assert b"\r\n" not in Path(paths[0]).read_bytes()
    print("!!! test_closed_form_outputs_are_byte_identical passed")


if __name__ == "__main__":
    workdir = Path(tempfile.mkdtemp())
    test_criteria_report_file(workdir)
    test_evolve_resonance(workdir)
    test_evolve_static_and_slow(workdir)
    test_sweep_rows(workdir)
    test_sweep_numeric_cross_check(workdir)
    test_sweep_grid_errors()
    test_primed_report(workdir)
    test_scaling_cli(workdir)
    test_exit_codes_subprocess(workdir)
    test_closed_form_outputs_are_byte_identical(workdir)
