import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
BIN = os.environ.get("WFCI_BIN", str(ROOT / "build" / "wfci"))
SCHEMAS = ROOT / "schemas"
SAMPLES = ROOT / "samples"

# Rows whose ambient is well-formed but whose hypersurface is not, for one
# parity of n (a pair of even weights against an odd degree).
PARITY_ROWS = {11: 0, 14: 0, 16: 1, 18: 0, 20: 1, 22: 0}


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("WFCI_DATA", None)
    if env:
        e.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def schema(name):
    s = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(s)
    return jsonschema.Draft202012Validator(s)


def test_analyze_codim2_table_row():
    r = run("analyze", "--weights", "1,2,3,4,5", "--degrees", "6,8")
    assert r.returncode == 0, r.stderr
    j = json.loads(r.stdout)
    schema("analysis").validate(j)
    assert j["adjunction"]["fano_index"] == 1
    assert j["quasi_smooth"]["holds"] is True
    assert j["table_match"] == {"table": "T2", "row": 2, "n": None}


def test_analyze_quadric_is_cylindrical():
    j = json.loads(run("analyze", "--weights", "1,1,1,1,1", "--degrees", "2").stdout)
    schema("analysis").validate(j)
    assert j["linear_cone_flags"] == []
    assert j["cylinder"]["status"] == "Cylindrical"
    assert j["cylinder"]["certificate"]["kind"] == "SumOfTwoWeights"


def test_analyze_non_well_formed_ambient():
    j = json.loads(run("analyze", "--weights", "2,2,3", "--degrees", "5").stdout)
    schema("analysis").validate(j)
    assert j["ambient_well_formed"] is False
    assert any("normalize first" in n for n in j["cylinder"]["notes"])


def test_analyze_wps_only():
    j = json.loads(run("analyze", "--weights", "1,2,2").stdout)
    schema("analysis").validate(j)
    assert j["normalization"]["output"] == [1, 1, 1]


def test_analyze_text_uses_exact_rationals():
    r = run("analyze", "--weights", "1,1,1,1", "--degrees", "2", "--format", "text")
    assert r.returncode == 0
    assert "." not in r.stdout.replace("...", "").split("cylinder status")[0].replace("e.g.", "")


@pytest.mark.parametrize("bad", [["--weights", "1,x,3"], ["--weights", ""], ["--weights", "0,1,2"]])
def test_malformed_input_is_usage_error(bad):
    assert run("analyze", *bad).returncode == 2


def test_missing_subcommand_is_usage_error():
    assert run().returncode == 2


def test_verify_tables_reports_only_parity_rows():
    r = run("verify-tables", "--n-max", "20")
    j = json.loads(r.stdout)
    schema("verification_report").validate(j)
    assert j["rows_checked"] == 75
    got = {(v["table"], v["row"], v["n"]) for v in j["violations"]}
    want = {("T1", row, n) for row, parity in PARITY_ROWS.items() for n in range(1, 21) if n % 2 == parity}
    assert got == want
    assert all(v["message"] == "not well-formed" for v in j["violations"])
    assert r.returncode == (0 if not want else 1)


def test_verify_tables_checksum_gate(tmp_path):
    data = (ROOT / "data" / "tables.csv").read_text()
    bad = tmp_path / "tables.csv"
    bad.write_text(data.replace("T2,1,", "T2,1,", 1).replace("K-stable", "K-stabel", 1))
    assert run("verify-tables", "--n-max", "1", env={"WFCI_DATA": str(bad)}).returncode == 3
    good = tmp_path / "ok.csv"
    good.write_text(data)
    assert run("verify-tables", "--n-max", "1", env={"WFCI_DATA": str(good)}).returncode in (0, 1)
    assert run("verify-tables", env={"WFCI_DATA": str(tmp_path / "missing.csv")}).returncode == 4


def test_enumerate_jsonl_and_determinism(tmp_path):
    out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["enumerate", "--dim", "2", "--codim", "2", "--index", "1", "--max-weight", "5"]
    assert run(*args, "--out", str(out1)).returncode == 0
    assert run(*args, "--out", str(out2), "--jobs", "3").returncode == 0
    assert out1.read_bytes() == out2.read_bytes()
    v = schema("candidate_record")
    lines = out1.read_text().splitlines()
    assert len(lines) >= 4
    recs = [json.loads(l) for l in lines]
    for rec in recs:
        v.validate(rec)
    matches = {(r["table_match"]["table"], r["table_match"]["row"]) for r in recs if r["table_match"]}
    assert {("T2", 1), ("T2", 2)} <= matches


def test_enumerate_csv(tmp_path):
    out = tmp_path / "a.csv"
    r = run("enumerate", "--dim", "2", "--codim", "2", "--index", "1", "--max-weight", "5", "--format", "csv",
            "--out", str(out))
    assert r.returncode == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("weights,degrees,")
    assert len(rows) >= 5


def test_enumerate_codim3_unsupported():
    r = run("enumerate", "--dim", "2", "--codim", "3", "--max-weight", "5")
    assert r.returncode == 2
    assert "codim 3 unsupported: no general QS criterion" in r.stderr


def test_enumerate_unwritable_output(tmp_path):
    r = run("enumerate", "--dim", "2", "--codim", "2", "--max-weight", "3", "--out", str(tmp_path / "no" / "x.jsonl"))
    assert r.returncode == 4


@pytest.mark.parametrize("name", ["conic", "cross_term_present", "no_enabling_term"])
def test_samples_match_polynomial_schema(name):
    schema("polynomial").validate(json.loads((SAMPLES / f"{name}.json").read_text()))


def test_normal_form_conic_needs_radical():
    r = run("normal-form", "--input", str(SAMPLES / "conic.json"), "--pair", "0,1")
    assert r.returncode == 0, r.stderr
    j = json.loads(r.stdout)
    schema("normal_form").validate(j)
    assert j["extension_used"] == -1


def test_normal_form_already_normal():
    j = json.loads(run("normal-form", "--input", str(SAMPLES / "cross_term_present.json"), "--pair", "0,1").stdout)
    schema("normal_form").validate(j)
    assert j["change_sequence"] == []


def test_normal_form_precondition_exit():
    r = run("normal-form", "--input", str(SAMPLES / "no_enabling_term.json"), "--pair", "0,1")
    assert r.returncode == 5
    assert "cross-term-absent" in r.stderr


def test_normal_form_generic_member_is_pure(tmp_path):
    args = ["normal-form", "--weights", "1,2,3,5", "--pair", "1,2", "--seed", "11"]
    a, b = run(*args), run(*args)
    assert a.returncode == 0 and a.stdout == b.stdout
    schema("normal_form").validate(json.loads(a.stdout))


def test_normal_form_bad_json(tmp_path):
    p = tmp_path / "p.json"
    p.write_text("{not json")
    assert run("normal-form", "--input", str(p), "--pair", "0,1").returncode == 2
    assert run("normal-form", "--input", str(tmp_path / "absent.json"), "--pair", "0,1").returncode == 4
