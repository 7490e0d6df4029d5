import io
import json

import numpy as np
import pandas as pd
import pytest

from soliton_coherent.cli import build_parser, main


def _csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


def test_smatrix_csv(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["smatrix", "--alphas", "1", "--n-max", "4", "--format", "csv", "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert frame.shape == (5, 5)
    assert frame.iloc[0, 0] == pytest.approx(1.25)


def test_density_xi_to_stdout(capsys):
    assert main(["density-xi", "--alphas", "1", "--grid", "-2:2:5"]) == 0
    output = capsys.readouterr().out
    assert output.splitlines()[0] == "x,omega_xi"
    frame = _csv(output)
    assert frame["omega_xi"].iloc[2] == pytest.approx(0.75 / np.pi, rel=1e-15)


def test_potential_at_origin(capsys):
    assert main(["potential", "--alphas", "1", "--grid", "-10:10:401"]) == 0
    frame = _csv(capsys.readouterr().out)
    assert frame["V"].iloc[200] == pytest.approx(-2.0)


def test_sinverse_json_carries_certificate(tmp_path):
    out = tmp_path / "inverse.json"
    assert main(["sinverse", "--alphas", "1", "--n-max", "3", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert list(payload) == ["command", "config_echo", "columns", "rows", "certificate"]
    assert payload["columns"] == ["k0", "k1", "k2", "k3"]
    assert float(payload["certificate"]["achieved"]) <= 1e-6


def test_coherent_state_samples(capsys):
    assert main(["coherent", "--state", "psi", "--z", "0.5+0.1i", "--grid", "-5:5:11"]) == 0
    frame = _csv(capsys.readouterr().out)
    assert list(frame.columns) == ["x", "re", "im"]
    assert len(frame) == 11


def test_bound_states_columns(capsys):
    assert main(["bound-states", "--alphas", "1,2", "--grid", "-20:20:801"]) == 0
    frame = _csv(capsys.readouterr().out)
    assert list(frame.columns) == ["x", "phi_1_re", "phi_1_im", "phi_2_re", "phi_2_im"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    config = tmp_path / "run.env"
    config.write_text("ALPHAS=1,2\nN_MAX=6\n")
    assert main(["smatrix", "--config", str(config)]) == 0
    assert _csv(capsys.readouterr().out).shape == (7, 7)
    assert main(["smatrix", "--config", str(config), "--n-max", "5"]) == 0
    assert _csv(capsys.readouterr().out).shape == (6, 6)


def test_unknown_config_key(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("ALPHA=1\n")
    assert main(["smatrix", "--config", str(config)]) == 2


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "all", "--alphas", "1", "--n-max", "0"],
    ["smatrix", "--alphas", "0"],
    ["smatrix", "--alphas", "1,1"],
    ["potential", "--grid", "-1:1"],
    ["coherent", "--z", "abc"],
    ["coherent", "--state", "xi_free", "--rep", "position"],
])
def test_invalid_parameters_exit_2(argv):
    assert main(argv) == 2


def test_numerical_failure_exit_3():
    # bound states cannot decay on a narrow window
    assert main(["bound-states", "--alphas", "1", "--grid", "-2:2:41"]) == 3


def test_verify_report_layout(tmp_path):
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "xi", "--alphas", "1", "--n-max", "10", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert list(payload) == ["suite", "config_echo", "checks", "overall_pass"]
    assert payload["overall_pass"] is True
    assert list(payload["checks"][0]) == ["name", "anchor", "max_residual", "tolerance", "pass"]
    assert payload["config_echo"]["tolerances"]["measure"] == "1e-08"
    assert payload["config_echo"]["grid"] == "-20:20:2048"


def test_verify_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["verify", "--suite", "xi", "--alphas", "1,2", "--n-max", "8"]
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_failed_check_exit_1(tmp_path):
    out = tmp_path / "report.json"
    argv = ["verify", "--suite", "xi", "--alphas", "1", "--n-max", "6", "--tol-measure", "1e-30", "--out", str(out)]
    assert main(argv) == 1
    assert json.loads(out.read_text())["overall_pass"] is False


@pytest.mark.slow
def test_verify_all_is_byte_identical_across_runs(tmp_path):
    out = tmp_path / "report.json"
    argv = ["verify", "--suite", "all", "--alphas", "1,2", "--out", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first
    payload = json.loads(first)
    assert payload["overall_pass"] is True
    assert payload["config_echo"]["output"] == {"format": "json"}


def test_verify_rejects_csv_format(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["verify", "--suite", "xi", "--alphas", "1", "--format", "csv", "--out", str(out)]) == 2
    assert not out.exists()


def test_negative_grid_bounds_parse_as_values():
    args = build_parser().parse_args(["potential", "--grid", "-10:10:401"])
    assert args.grid == "-10:10:401"
    assert args.command == "potential"
