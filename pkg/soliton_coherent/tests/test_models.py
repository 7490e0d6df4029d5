import pytest
from pydantic import ValidationError

from soliton_coherent.models import CheckResult, ClassificationReport, RunConfig, SolitonSpec, StateFamily


def test_run_config_parses_cli_strings():
    config = RunConfig(alphas="2,1", z="0.7+0.2i", n_max="8")
    assert config.alphas == [1.0, 2.0]
    assert config.z == 0.7 + 0.2j
    assert config.n_max == 8
    assert config.soliton_spec() == SolitonSpec(alphas=(1.0, 2.0), shifts=(0.0, 0.0))


def test_run_config_rejects_small_truncation():
    with pytest.raises(ValidationError):
        RunConfig(alphas=[1.0, 2.0], n_max=3)


def test_run_config_rejects_mismatched_shifts():
    with pytest.raises(ValidationError):
        RunConfig(alphas=[1.0, 2.0], shifts="0.5")


def test_echo_is_string_encoded():
    echo = RunConfig(alphas=[1.0], z=0.5).echo()
    assert list(echo) == ["alphas", "shifts", "n_max", "quad_order", "grid", "p_max", "p_points", "z",
                          "state", "rep", "t", "tolerances", "output"]
    assert echo["alphas"] == ["1"]
    assert echo["shifts"] == ["0"]
    assert echo["z"] == "0.5"
    assert echo["output"] == {"format": "csv"}


def test_state_family_requires_alphas_for_darboux_families():
    with pytest.raises(ValidationError):
        StateFamily(family="eta")
    assert StateFamily(family="psi").alphas == ()


def test_check_result_compare():
    assert CheckResult.compare("a", "x = y", 1e-9, 1e-8).passed
    assert not CheckResult.compare("a", "x = y", float("nan"), 1e-8).passed
    payload = CheckResult.compare("a", "x = y", 0.5, 1.0).to_payload()
    assert payload == {"name": "a", "anchor": "x = y", "max_residual": "0.5", "tolerance": "1", "pass": True}


def test_classification_report_claim():
    report = ClassificationReport(family="rho", claimed="Definition2", classification="neither", evidence=[])
    assert not report.matches_claim
    assert list(report.to_payload()) == ["family", "claimed", "classification", "t", "evidence", "note"]
