"""Config validation, scenario runs, determinism, and CLI exit codes."""

import json

import pytest

from emt_lab import ConfigError, load_config, module_schema, validate_config
from emt_lab.cli import bundled_scenarios, main
from emt_lab.config import MODULES
from emt_lab.runner import run_scenario


def minimal(module="epistemic", **extra):
    cfg = {"name": "t", "module": module}
    cfg.update(extra)
    return cfg


def test_minimal_config_fills_defaults():
    cfg = validate_config(minimal())
    assert cfg.params["theta0"] == 1.0
    assert cfg.seed == 0
    assert cfg.output_format == "csv"


def test_negative_theta0_names_field():
    with pytest.raises(ConfigError) as err:
        validate_config(minimal(params={"theta0": -1.0}))
    assert any("theta0" in p for p in err.value.problems)


def test_unknown_key_suggests_closest():
    with pytest.raises(ConfigError) as err:
        validate_config(minimal(params={"thetaO": 1.0}))
    joined = " ".join(err.value.problems)
    assert "thetaO" in joined and "theta0" in joined


def test_all_errors_collected():
    with pytest.raises(ConfigError) as err:
        validate_config(
            minimal(params={"theta0": -1.0, "dt": 0.0, "bogus": 1}, seed=-1)
        )
    assert len(err.value.problems) >= 4


def test_bad_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  broken\n}")
    with pytest.raises(ConfigError) as err:
        load_config(str(path))
    assert "line" in err.value.problems[0]


def test_missing_file():
    with pytest.raises(ConfigError):
        load_config("/nonexistent/config.json")


def test_unknown_module_rejected():
    with pytest.raises(ConfigError):
        validate_config(minimal(module="nonsense"))
    with pytest.raises(ConfigError):
        module_schema("nonsense")


def test_every_module_has_schema():
    for module in MODULES:
        schema = module_schema(module)
        assert schema
        for spec in schema.values():
            assert "type" in spec and "default" in spec


def test_digest_stable_and_sensitive():
    a = validate_config(minimal())
    b = validate_config(minimal())
    c = validate_config(minimal(seed=1))
    assert a.digest() == b.digest()
    assert a.digest() != c.digest()


@pytest.mark.parametrize("fname", [f for f, _ in bundled_scenarios()])
def test_bundled_scenarios_run_and_pass(fname, tmp_path):
    cfg = dict(bundled_scenarios())[fname]
    report = run_scenario(cfg, out_dir=str(tmp_path))
    assert report.passed, f"{fname}: failing checks {report.checks}"
    assert report.config_digest == cfg.digest()


@pytest.mark.parametrize("fname", [f for f, _ in bundled_scenarios()])
def test_bundled_scenarios_byte_identical_reruns(fname, tmp_path):
    cfg = dict(bundled_scenarios())[fname]
    r1 = run_scenario(cfg, out_dir=str(tmp_path / "a"))
    r2 = run_scenario(cfg, out_dir=str(tmp_path / "b"))
    assert r1.config_digest == r2.config_digest
    for p1, p2 in zip(r1.artifact_paths, r2.artifact_paths):
        with open(p1, "rb") as f1, open(p2, "rb") as f2:
            assert f1.read() == f2.read()


def test_json_artifacts_round_trip(tmp_path):
    cfg = dict(bundled_scenarios())["mdp_default.json"]
    report = run_scenario(cfg, out_dir=str(tmp_path))
    with open(report.artifact_paths[0]) as fh:
        doc = json.load(fh)
    assert "values" in doc and "policy" in doc


def test_csv_is_crlf_terminated(tmp_path):
    cfg = dict(bundled_scenarios())["feedback_default.json"]
    report = run_scenario(cfg, out_dir=str(tmp_path))
    with open(report.artifact_paths[0], "rb") as fh:
        data = fh.read()
    assert b"\r\n" in data


def test_cli_run_exit_codes(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(minimal(module="mdp")))
    assert main(["run", str(good), "--out", str(tmp_path)]) == 0

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(minimal(params={"theta0": -2.0})))
    assert main(["run", str(bad), "--out", str(tmp_path)]) == 2


def test_cli_seed_override(tmp_path):
    cfg_path = tmp_path / "evt.json"
    cfg_path.write_text(json.dumps(minimal(
        module="evt", params={"k_draws": 50, "replicates": 50, "ks_threshold": 0.9})))
    assert main(["run", str(cfg_path), "--out", str(tmp_path / "s1"), "--seed", "1"]) == 0
    assert main(["run", str(cfg_path), "--out", str(tmp_path / "s2"), "--seed", "2"]) == 0
    j1 = json.loads((tmp_path / "s1" / "t.json").read_text())
    j2 = json.loads((tmp_path / "s2" / "t.json").read_text())
    assert j1["mean"] != j2["mean"]


def test_cli_check_failure_exit_code(tmp_path):
    # a feedback scenario expected to be unstable that actually settles
    cfg = minimal(module="feedback", params={
        "e_target": 0.0, "o0": 0.0, "a0": 0.0, "horizon": 10,
        "check_settled": True, "expect_unstable": True,
    })
    path = tmp_path / "check.json"
    path.write_text(json.dumps(cfg))
    assert main(["run", str(path), "--out", str(tmp_path)]) == 1


def test_cli_schema_command(capsys):
    assert main(["schema", "mdp"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["beta"]["default"] == 0.9
    assert main(["schema", "nope"]) == 2


def test_cli_parallel_jobs(tmp_path):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    p1.write_text(json.dumps({"name": "a", "module": "mdp"}))
    p2.write_text(json.dumps({"name": "b", "module": "policy",
                              "params": {"budget": 1.0}}))
    out = tmp_path / "out"
    assert main(["run", str(p1), str(p2), "--out", str(out), "--jobs", "2"]) == 0
    assert (out / "a.json").exists() and (out / "b.json").exists()
