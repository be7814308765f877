import json
import math
import subprocess
import sys

import numpy as np
import pytest

from photonprop.cli import main
from photonprop.fileio import read_table
from photonprop.frft import hermite_gauss
from photonprop.scenarios import load_scenario


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_geometry_mu_one(capsys):
    code, out, _ = run(["geometry", "--z", "1", "--ra", "1", "--lambda", "632e-9"], capsys)
    d = json.loads(out)
    assert code == 0
    assert d["alpha_rad"] == pytest.approx(math.pi / 2, abs=1e-15)
    assert d["epsilon"] == 1.0 and d["R_B_m"] == -1.0
    assert {"z_m", "R_A_m", "mu", "epsilon", "alpha_rad", "R_B_m", "scale_m"} <= set(d)


def test_geometry_flat(capsys):
    code, out, _ = run(["geometry", "--z", "0.9684", "--ra", "flat"], capsys)
    assert code == 0 and json.loads(out)["R_A_m"] is None


def test_usage_and_numeric_errors(capsys):
    code, _, err = run(["geometry", "--z", "1"], capsys)
    assert code == 2 and json.loads(err)["error"] == "UsageError"
    code, _, err = run(["bogus"], capsys)
    assert code == 2
    code, _, err = run(["geometry", "--z", "3", "--ra", "1"], capsys)
    assert code == 1 and json.loads(err)["error"] == "OutOfBranch"


def test_malformed_scenario_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(["counts", "--scenario", str(bad), "--out", str(tmp_path)], capsys)
    assert code == 2 and json.loads(err)["error"] == "SchemaError"
    bad.write_text(json.dumps({"name": "x"}))
    code, _, err = run(["counts", "--scenario", str(bad), "--out", str(tmp_path)], capsys)
    assert code == 2 and "pointer" in json.loads(err)


def test_aliasing_exit_1(tmp_path, capsys):
    code, _, err = run(["frft", "--alpha", "0.3", "--d", "1.0", "--out", str(tmp_path)], capsys)
    assert code == 1 and json.loads(err)["error"] == "AliasedInput"


def test_frft_command(tmp_path, capsys):
    code, out, _ = run(["frft", "--alpha", "0.7", "--hg", "0,3", "--out", str(tmp_path)], capsys)
    d = json.loads(out)
    assert code == 0 and d["rel_energy_error"] < 1e-12
    assert (tmp_path / "frft.csv").is_file() and (tmp_path / "frft.png").is_file()
    # feed the output back in as input
    code, out, _ = run(["frft", "--alpha", "-0.7", "--input", str(tmp_path / "frft.csv"),
                        "--out", str(tmp_path / "back"), "--no-plots"], capsys)
    assert code == 0
    t = read_table(tmp_path / "back" / "frft.csv")
    start = np.abs(hermite_gauss(0, t["coord"]) + hermite_gauss(3, t["coord"])) ** 2 / 2
    np.testing.assert_allclose(t["intensity"], start, atol=1e-10)


def test_propagate_rs_compare(tmp_path, capsys):
    code, out, _ = run(["propagate", "--method", "rs", "--scenario", "paper-slit",
                        "--compare-with", "fresnel", "--out", str(tmp_path)], capsys)
    assert code == 0
    m = json.loads((tmp_path / "metrics.json").read_text())
    assert m["rel_L2_intensity"] <= 0.01
    assert (tmp_path / "intensity.png").is_file()
    t = read_table(tmp_path / "field_rs.csv")
    assert list(t) == ["x_m", "re", "im", "intensity"]
    assert load_scenario(tmp_path / "scenario.json") == load_scenario("paper-slit")


def test_sweep_command(tmp_path, capsys):
    code, out, _ = run(["sweep", "--scenario", "young", "--alphas", "0.8,0.85,...,1.0",
                        "--out", str(tmp_path)], capsys)
    d = json.loads(out)
    assert code == 0 and len(d["steps"]) == 5
    assert len(list(tmp_path.glob("sweep_alpha_*.csv"))) == 5
    assert d["energy_rel_spread"] <= 1e-6
    assert (tmp_path / "sweep.png").is_file()


def test_counts_command(tmp_path, capsys):
    argv = ["counts", "--scenario", "paper-slit", "--seed", "42", "--total", "100000",
            "--no-plots", "--format", "json"]
    code, out, _ = run(argv + ["--out", str(tmp_path / "a")], capsys)
    d = json.loads(out)
    assert code == 0 and d["seed"] == 42 and d["dwell_s"] == 0.01 and "rate_scale" in d
    run(argv + ["--out", str(tmp_path / "b")], capsys)
    a = (tmp_path / "a" / "scan.json").read_text()
    assert a == (tmp_path / "b" / "scan.json").read_text()
    assert not list((tmp_path / "a").glob("*.png"))


def test_green_kernel_command(tmp_path, capsys):
    code, out, _ = run(["green-kernel", "--rho", "dirac", "--z", "0.01", "--window", "5e-4",
                        "--out", str(tmp_path)], capsys)
    d = json.loads(out)
    assert code == 0 and d["phase_rms_vs_spherical"] <= 1e-6
    assert list(read_table(tmp_path / "green_kernel.csv")) == ["x_m", "re", "im", "phase"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "photonprop", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip()
