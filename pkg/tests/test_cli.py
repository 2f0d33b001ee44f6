import json

import pytest

from bistable_games.cli import EXIT_CONFIG, EXIT_DOMAIN, EXIT_OK, EXIT_QUASI, run
from bistable_games.config import build_run_config, validate_document
from bistable_games.core import ConfigError, ScenarioMode
from bistable_games.sweep import Axis, SweepSpec, fmt, write_csv


def _run(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_sweep_mesh_is_row_major():
    spec = SweepSpec((Axis("p", (0.0, 1.0)), Axis("q", (0.1, 0.2, 0.3))), "utility")
    mesh = spec.mesh()
    assert list(mesh["p"]) == [0, 0, 0, 1, 1, 1]
    assert list(mesh["q"]) == [0.1, 0.2, 0.3] * 2
    assert spec.size == 6


def test_float_formatting_is_fixed_precision():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(3.0) == "3"
    assert write_csv(["a", "b"], [(1.5, True)]) == "a,b\n1.5,true\n"


def test_axis_validation():
    with pytest.raises(ConfigError) as exc:
        Axis("p", ())
    assert exc.value.field == "axes.p"


def test_classical_utility_columns_and_point(capsys, tmp_path):
    cfg = _config(tmp_path, {
        "scenario": {"k": 0.5},
        "axes": [{"name": "p", "values": [0.5]}, {"name": "q", "values": [0.5]}],
    })
    code, out, _ = _run(capsys, "classical-utility", "--config", cfg)
    assert code == EXIT_OK
    header, row = out.strip().split("\n")
    assert header.split(",")[:6] == ["p", "q", "k", "kprime", "piA", "piB"]
    assert row.split(",")[4] == "2.25"


def test_default_figure_sweep_shape(capsys):
    code, out, _ = _run(capsys, "classical-utility")
    assert code == EXIT_OK
    assert len(out.strip().split("\n")) == 1 + 6 * 21 * 21


def test_csv_output_is_byte_stable(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert run(["quantum", "--k", "0.8", "--out", str(path), "--config",
                    _config(tmp_path, {"axes": [{"name": "theta_a", "min": 0, "max": 3, "steps": 7},
                                                {"name": "theta_b", "min": 0, "max": 3, "steps": 7}]})]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"\r" not in paths[0].read_bytes()


def test_quantum_identity_point(capsys, tmp_path):
    cfg = _config(tmp_path, {"axes": [{"name": "theta_a", "values": [0]}, {"name": "theta_b", "values": [0]}]})
    code, out, _ = _run(capsys, "quantum", "--k", "1", "--config", cfg, "--format", "json")
    row = json.loads(out)["rows"][0]
    assert row["piA"] == pytest.approx(3.0, abs=1e-12)
    assert abs(row["closed_form_residual"]) < 1e-9


def test_delta_m_anchor_through_cli(capsys, tmp_path):
    cfg = _config(tmp_path, {"axes": [{"name": "k", "values": [0.5, 1]}, {"name": "b_over_c", "values": [2]}]})
    code, out, _ = _run(capsys, "delta-m", "--config", cfg, "--format", "json")
    rows = json.loads(out)["rows"]
    assert [r["delta_m"] for r in rows] == pytest.approx([-0.5, 1.0], abs=1e-12)


def test_delta_m_rejects_benefit_below_cost(capsys, tmp_path):
    cfg = _config(tmp_path, {"axes": [{"name": "b_over_c", "values": [0.5]}]})
    code, _, err = _run(capsys, "delta-m", "--config", cfg)
    assert code == EXIT_DOMAIN
    assert "b_over_c" in err


def test_ne_table_for_prisoners_dilemma(capsys):
    code, out, _ = _run(capsys, "ne", "--game", "PD")
    doc = json.loads(out)
    assert [t["scenario"] for t in doc["scenarios"]] == ["rational", "symmetric", "one_rational", "complementary"]
    for t in doc["scenarios"]:
        assert len(t["candidates"]) <= 5
        assert sum(c["satisfied"] for c in t["candidates"]) <= 3


def test_ne_half_is_everywhere(capsys):
    code, out, _ = _run(capsys, "ne", "--k", "0.5")
    sym = json.loads(out)["scenarios"][1]
    assert sym["everywhere"]


def test_ne_stag_hunt_pure_points(capsys):
    code, out, _ = _run(capsys, "ne", "--game", "SH", "--format", "csv")
    lines = out.strip().split("\n")
    assert 'rational,1,1,"(0,0)",0,0,true' in lines
    assert 'rational,1,1,"(1,1)",1,1,true' in lines


def test_simulate_report(capsys):
    code, out, _ = _run(capsys, "simulate", "--trials", "1000", "--seed", "3")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["counts"] == [1000, 0, 0, 0]
    assert doc["algorithm"].startswith("numpy-philox")


def test_simulate_refuses_quasi_probability(capsys):
    code, _, err = _run(capsys, "simulate", "--target", "quantum", "--mode", "independent",
                        "--k", "0.9", "--kprime", "0.1", "--trials", "10")
    assert code == EXIT_QUASI
    assert "-1/3" in err


@pytest.mark.parametrize("doc, field", [
    ({"bogus": 1}, "bogus"),
    ({"scenario": {"k": 2}}, "scenario.k"),
    ({"axes": [{"name": "p", "min": 0, "max": 1, "steps": 0}]}, "axes[0].steps"),
    ({"axes": [{"name": "p", "values": []}]}, "axes.p"),
    ({"grid": {"theta_points": 11}}, "grid.theta_points"),
    ({"game": "custom"}, "payoffs"),
    ({"scenario": {"mode": "independent", "k": 0.7}}, "scenario.kprime"),
    ({"axes": [{"name": "p", "values": [0.1]}, {"name": "p", "values": [0.2]}]}, "axes.p"),
])
def test_config_errors_name_the_field(capsys, tmp_path, doc, field):
    code, _, err = _run(capsys, "classical-utility", "--config", _config(tmp_path, doc))
    assert code == EXIT_CONFIG
    assert f"'{field}'" in err


def test_malformed_json_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"seed": 1,\n "x" 2}')
    code, _, err = _run(capsys, "ne", "--config", str(path))
    assert code == EXIT_CONFIG
    assert "line 2" in err


def test_flags_override_config_file():
    cfg = build_run_config({"scenario": {"mode": "symmetric", "k": 0.6}, "seed": 4}, {"k": 0.9, "seed": 8})
    assert cfg.k == 0.9 and cfg.seed == 8
    assert cfg.scenario_mode is ScenarioMode.SYMMETRIC


def test_claim_report_matches_schema(capsys, tmp_path):
    cfg = _config(tmp_path, {"claims": {"ids": ["classical.pd.rational-single", "quantum.any.f-identity"]}})
    code, out, _ = _run(capsys, "verify-claims", "--config", cfg)
    doc = json.loads(out)
    validate_document(doc, "claim_report")
    assert [c["id"] for c in doc["claims"]] == ["classical.pd.rational-single", "quantum.any.f-identity"]
    code, text, _ = _run(capsys, "verify-claims", "--config", cfg, "--text")
    assert "classical.pd.rational-single" in text
