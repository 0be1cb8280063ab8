import json
import subprocess
import sys

import pytest

from psical import __version__
from psical.cli import EXPERIMENTS, ExperimentConfig, main, parse_config, run
from psical.exceptions import ConfigError


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_config_values():
    cfg = parse_config("""
        # comment
        grid.N = 64
        spectral.lambda=0+1i   # trailing comment
        parametrix.J=1,2
        symbol.name=perturbed
    """)
    assert cfg == {"grid.N": 64, "spectral.lambda": 1j, "parametrix.J": [1, 2],
                   "symbol.name": "perturbed"}
    assert parse_config("spectral.lambda=-2.5-0.5i")["spectral.lambda"] == -2.5 - 0.5j


@pytest.mark.parametrize("text", ["", "# only a comment\n\n", "grid.N", "grid.N=abc",
                                  "grid.size=4", "grid.N=4\ngrid.N=8"])
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig("orders", {"grid.N": 31}).grid()
    with pytest.raises(ConfigError):
        ExperimentConfig("orders", {"symbol.name": "nope"}).symbol()
    with pytest.raises(ConfigError):
        ExperimentConfig("orders", {"tolerance.slope": -1.0}).tolerance("slope", 0.1)
    with pytest.raises(ConfigError):
        ExperimentConfig("orders", {"grid.h_exp_min": 5, "grid.h_exp_max": 2}).grid()


def test_empty_config_exits_one(tmp_path, capsys):
    assert main(["weights", "--config", write(tmp_path, ""), "--out", str(tmp_path)]) == 1
    assert "empty" in capsys.readouterr().err


def test_missing_config_exits_one(tmp_path):
    assert main(["weights", "--config", str(tmp_path / "none.cfg"), "--out", str(tmp_path)]) == 1


def test_usage_errors_exit_one(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["nonsense", "--config", "x", "--out", "y"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["weights"])
    assert info.value.code == 1


def test_experiment_mismatch_exits_one(tmp_path):
    path = write(tmp_path, "experiment=orders\n")
    assert main(["weights", "--config", path, "--out", str(tmp_path)]) == 1


def test_numeric_error_exits_one(tmp_path):
    # bandwidth 20 aliases a 32-point grid
    path = write(tmp_path, "grid.N=32\nsymbol.name=plane_wave\nsymbol.n=20\n")
    assert main(["quantize-check", "--config", path, "--out", str(tmp_path)]) == 1


def test_weights_report(tmp_path):
    out = tmp_path / "out"
    assert main(["weights", "--config", write(tmp_path, "experiment=weights\n"),
                 "--out", str(out)]) == 0
    report = json.loads((out / "weights.json").read_text())
    assert report["verdict"] == "pass" and report["version"] == __version__
    assert report["csv"] == "weights.csv" and report["config"] == {"experiment": "weights"}
    header = (out / "weights.csv").read_text().splitlines()[0]
    assert header == "zeta_norm,h,rho_inf,rho_h_inf,rho_h_ff,rho_h_0,r_h,r_inf"


def test_failure_exits_two(tmp_path):
    path = write(tmp_path, "tolerance.order=1e-9\n")
    assert main(["orders", "--config", path, "--out", str(tmp_path)]) == 2
    report = json.loads((tmp_path / "orders.json").read_text())
    assert report["verdict"] == "fail"


def test_complex_columns_and_precision(tmp_path):
    path = write(tmp_path, "grid.N=16\ncontour.nodes=32\n")
    assert main(["power", "--config", path, "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "power.csv").read_text().splitlines()
    assert lines[0] == "operator,zeta,power_re,power_im,oracle_re,oracle_im"
    value = lines[1].split(",")[2]
    assert float(value) == float(f"{float(value):.17g}")


def test_deterministic_output(tmp_path, monkeypatch):
    path = write(tmp_path, "grid.N=32\ngrid.h_exp_max=5\nsymbol.name=laplacian\n")
    outputs = []
    for threads, sub in (("1", "a"), ("4", "b")):
        monkeypatch.setenv("PSICAL_THREADS", threads)
        assert main(["norms", "--config", path, "--out", str(tmp_path / sub), "--seed", "3"]) == 0
        outputs.append(((tmp_path / sub / "norms.csv").read_bytes(),
                        json.loads((tmp_path / sub / "norms.json").read_text())))
    assert outputs[0] == outputs[1]
    assert outputs[0][1]["seed"] == 3


def test_small_experiments_pass(tmp_path):
    raw = {"grid.N": 64, "grid.h_exp_max": 5}
    for name in ("quantize-check", "compose", "parametrix", "power", "norms"):
        report = run(ExperimentConfig(name, raw), str(tmp_path))
        assert report.verdict == "pass", name


def test_all_lists_every_experiment(tmp_path):
    raw = {"grid.N": 64, "grid.h_exp_max": 5}
    report = run(ExperimentConfig("all", raw), str(tmp_path))
    assert set(report.metrics["verdicts"]) == set(EXPERIMENTS)
    assert (tmp_path / "all.json").exists()


def test_console_entry_point(tmp_path):
    path = write(tmp_path, "experiment=weights\n")
    proc = subprocess.run([sys.executable, "-m", "psical.cli", "weights", "--config", path,
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "weights: pass" in proc.stdout
