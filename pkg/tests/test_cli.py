from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from cauchytr.cli.main import cli
from cauchytr.cli.specfile import curve_from_spec, read_spec, spec_of_curve


def run(*args):
    r = CliRunner().invoke(cli, list(args))
    return r.exit_code, r.stdout, r.stderr


def strip(doc):
    doc = dict(doc)
    doc.pop("execution", None)
    return json.dumps(doc, sort_keys=True)


@pytest.mark.parametrize("name", ["z2", "z3", "builder"])
def test_bundled_specs_round_trip(name):
    doc = read_spec(name)
    c = curve_from_spec(doc)
    assert curve_from_spec(spec_of_curve(c)).fingerprint == c.fingerprint


def test_check_z3():
    code, out, _ = run("check", "z3")
    assert code == 0
    p = json.loads(out)["payload"]
    assert sorted(b["alpha"] for b in p["branch_points"]) == ["-1", "1"]
    assert p["not_cubic"] is False and p["ramified_infinities"] == 1 and p["cauchy"] is False


def test_check_z2_notes_skipped_checks():
    code, out, _ = run("check", "z2")
    assert code == 0 and "skipped" in json.loads(out)["payload"]["notice"]


def test_check_builder_is_cauchy():
    code, out, _ = run("check", "builder")
    assert code == 0 and json.loads(out)["payload"]["cauchy"] is True


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out, err = run("check", str(p))
    assert code == 1 and out == "" and "not valid JSON" in err


def test_admission_violation_named(tmp_path):
    p = tmp_path / "cusp.json"
    p.write_text(json.dumps({"x": {"numerator": ["0", "0", "1"]}, "y": {"numerator": ["0", "0", "1"]}}))
    code, out, err = run("check", str(p))
    assert code == 2 and "CuspDetected" in err
    code, _, err = run("omega", str(p), "1", "1")
    assert code == 1 and "CuspDetected" in err


def test_omega_and_cache(tmp_path):
    code, out1, _ = run("omega", "z2", "1", "1", "--cache-dir", str(tmp_path))
    assert code == 0
    code, out2, _ = run("omega", "z2", "1", "1", "--cache-dir", str(tmp_path))
    a, b = json.loads(out1), json.loads(out2)
    assert a["payload"] == b["payload"] and strip(a) == strip(b)
    assert b["execution"]["cache_hits"] == [[1, 1]]
    assert a["payload"]["omega"]["rational"] == {"numerator": ["1/16"], "denominator": ["0", "0", "0", "0", "1"]}


def test_omega_usage_error():
    code, out, _ = run("omega", "z2", "0", "1")
    assert code == 1 and out == ""


def test_corrupted_cache_exit_1(tmp_path):
    run("omega", "z3", "1", "1", "--cache-dir", str(tmp_path))
    f = next(tmp_path.glob("*.json"))
    doc = json.loads(f.read_text())
    doc["fingerprint"] = "f" * 16
    f.write_text(json.dumps(doc))
    code, _, err = run("omega", "z3", "1", "1", "--cache-dir", str(tmp_path))
    assert code == 1 and "cache" in err


def test_precision_exhaustion_exit_3():
    code, _, err = run("omega", "z3", "3", "1", "--max-order", "5")
    assert code == 3 and "precision" in err


def test_omega_verify_flag():
    code, out, _ = run("omega", "z3", "2", "1", "--verify")
    assert code == 0 and json.loads(out)["payload"]["verification"]["passed"]


def test_free_energy_commands():
    code, out, _ = run("free-energy", "z2", "2")
    assert code == 0 and json.loads(out)["payload"]["F"]["rational"] == "0"
    code, _, err = run("free-energy", "z2", "1")
    assert code == 1 and "f1-gradient" in err
    code, _, err = run("free-energy", "z3", "0")
    assert code == 2 and "RamifiedInfinity" in err
    code, out, _ = run("free-energy", "builder", "0", "--float", "25")
    F = json.loads(out)["payload"]["F"]
    assert code == 0 and "logs" in F and "float" in F


def test_verify_skips_loop_on_non_cubic():
    code, out, err = run("verify", "z2", "--suite", "loop")
    assert code == 0 and "skipped" in err
    assert json.loads(out)["payload"]["results"]["loop"][0]["status"] == "skipped"


def test_verify_reports_dilaton_failure_then_corrected_passes():
    code, out, _ = run("verify", "z2", "--suite", "dilaton", "--max-level", "4")
    assert code == 2
    first = json.loads(out)["payload"]["results"]["dilaton"][0]
    assert first["status"] == "fail" and first["uniform_ratio"] == "-1"
    code, out, _ = run("verify", "z2", "--suite", "dilaton", "--max-level", "4", "--dilaton-sign", "corrected")
    assert code == 0


def test_verify_deterministic_across_jobs():
    outs = []
    for jobs in ("1", "4", "1"):
        code, out, _ = run("verify", "z3", "--suite", "symmetry", "--suite", "structure", "--max-level", "4",
                           "--jobs", jobs)
        assert code == 0
        outs.append(strip(json.loads(out)))
    assert outs[0] == outs[1] == outs[2]


def test_f1_gradient_command():
    code, out, _ = run("f1-gradient", "builder", "--direction", "T", "--direction", "tm1_2")
    assert code == 0 and json.loads(out)["payload"]["agree"] is True
