import json
import subprocess
import sys

import jsonschema
import pytest

from udeform.cli import DEFAULTS, main, run, validate_jobspec, JobError, _load_schema
from udeform.fixtures import FIXTURES, emit_example


def write_job(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_every_fixture_passes(tmp_path, name):
    path = write_job(tmp_path, emit_example(name))
    out = tmp_path / "report.json"
    code = main(["run", "--job", path, "--format", "json", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == 0, report
    assert report["status"] == "pass"


def test_emit_writes_valid_jobspecs(tmp_path):
    for name in FIXTURES:
        out = tmp_path / ("%s.json" % name)
        assert main(["emit", name, "--out", str(out)]) == 0
        validate_jobspec(json.loads(out.read_text()))


def test_emit_unknown_name():
    assert main(["emit", "nonexistent-fixture"]) == 2


def test_reports_are_byte_identical(tmp_path):
    path = write_job(tmp_path, emit_example("moyal"))
    outs = []
    for i in range(2):
        out = tmp_path / ("r%d.json" % i)
        main(["run", "--job", path, "--format", "json", "--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_report_json_matches_schema(tmp_path):
    path = write_job(tmp_path, emit_example("exp-pp"))
    out = tmp_path / "report.json"
    main(["run", "--job", path, "--format", "json", "--out", str(out)])
    report = json.loads(out.read_text())
    jsonschema.Draft7Validator(_load_schema("report.schema.json")).validate(report)


def test_malformed_json_exits_two(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"command": oops}')
    assert main(["run", "--job", str(path)]) == 2
    assert "malformed JSON" in capsys.readouterr().err


def test_schema_violation_exits_two(tmp_path, capsys):
    path = write_job(tmp_path, {"command": "no-such-command", "inputs": {}})
    assert main(["run", "--job", str(path)]) == 2
    out = capsys.readouterr().out
    assert "status: ERROR" in out and "$.command" in out


def test_missing_file_exits_two(tmp_path):
    assert main(["run", "--job", str(tmp_path / "absent.json")]) == 2


def test_failing_job_exits_one(tmp_path):
    job = {
        "command": "operad-axioms",
        "inputs": {"bialgebra": {"kind": "matrix-coordinate", "degree_cutoff": 3}},
        "parameters": {"samples": 10},
    }
    path = write_job(tmp_path, job)
    out = tmp_path / "r.json"
    code = main(["run", "--job", path, "--format", "json", "--out", str(out)])
    assert code == 1
    report = json.loads(out.read_text())
    assert report["status"] == "fail"
    assert report["data"]["mismatches"]["equivariance"] == {
        "expected": True,
        "got": False,
    }
    # the same job with the failure declared expected turns into a pass
    job["expect"] = {"equivariance": False}
    path2 = write_job(tmp_path, job, "job2.json")
    assert main(["run", "--job", path2]) == 0


def test_flag_overrides_parameters(tmp_path):
    job = emit_example("moyal")
    path = write_job(tmp_path, job)
    out = tmp_path / "r.json"
    main(["run", "--job", path, "--format", "json", "--order", "3", "--out", str(out)])
    report = json.loads(out.read_text())
    assert report["parameters"]["order"] == 3


def test_text_and_json_statuses_agree(tmp_path):
    path = write_job(tmp_path, emit_example("quantum-plane"))
    out_t = tmp_path / "r.txt"
    out_j = tmp_path / "r.json"
    main(["run", "--job", path, "--format", "text", "--out", str(out_t)])
    main(["run", "--job", path, "--format", "json", "--out", str(out_j)])
    text = out_t.read_text()
    report = json.loads(out_j.read_text())
    assert ("status: PASS" in text) == (report["status"] == "pass")


def test_out_dir_environment_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("UDEFORM_OUT_DIR", str(tmp_path))
    assert main(["emit", "trivial-pair", "--out", "spec.json"]) == 0
    assert (tmp_path / "spec.json").exists()


def test_unknown_expectation_key_is_an_error(tmp_path):
    job = dict(emit_example("trivial-pair"))
    job["expect"] = {"nonexistent": True}
    path = write_job(tmp_path, job)
    assert main(["run", "--job", path]) == 2


def test_console_script_wiring(tmp_path):
    path = write_job(tmp_path, emit_example("trivial-pair"))
    proc = subprocess.run(
        [sys.executable, "-m", "udeform.cli", "run", "--job", path],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "status: PASS" in proc.stdout


def test_run_function_reports_defaults():
    report, code = run(emit_example("exp-pp"))
    assert code == 0
    for key, value in DEFAULTS.items():
        if key not in ("order",):
            assert report.parameters[key] == value


def test_cobar_job_payload(tmp_path):
    job = {
        "command": "cobar-h2",
        "inputs": {
            "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]}
        },
        "parameters": {"cobar_cutoff": 4},
    }
    path = write_job(tmp_path, job)
    out = tmp_path / "r.json"
    assert main(["run", "--job", path, "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["data"]["total_dimension"] == 1
    nonzero = [b for b in report["data"]["blocks"] if b["dim"]]
    assert nonzero == [{"degree": 2, "dim": 1, "representatives": ["p1@p2"]}]


def test_hochschild_job_reports_wedge(tmp_path):
    job = {
        "command": "hochschild",
        "inputs": {
            "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
            "algebra": {
                "kind": "polynomial-truncated",
                "variables": ["p", "q"],
                "degree_cutoff": 4,
            },
            "action": {
                "p1": {"type": "derivation", "partials": {"p": {"1": "1"}}},
                "p2": {"type": "derivation", "partials": {"p": {"q": "1"}}},
            },
            "udf": {
                "exp_of": [
                    {"coeff": "1/2", "slots": ["p1", "p2"]},
                    {"coeff": "-1/2", "slots": ["p2", "p1"]},
                ]
            },
        },
        "parameters": {"order": 2},
        "expect": {"cocycle_zero": True, "coboundary": True, "wedge_nonzero": False},
    }
    path = write_job(tmp_path, job)
    out = tmp_path / "r.json"
    assert main(["run", "--job", path, "--format", "json", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["data"]["wedge_over_A"] == {}


def test_udf_orders_form(tmp_path):
    job = {
        "command": "verify-twist",
        "inputs": {
            "bialgebra": {"kind": "polynomial-primitive", "generators": ["p1", "p2"]},
            "udf": {
                "orders": [
                    [{"coeff": "1", "slots": ["1", "1"]}],
                    [
                        {"coeff": "1/2", "slots": ["p1", "p2"]},
                        {"coeff": "-1/2", "slots": ["p2", "p1"]},
                    ],
                ]
            },
        },
        "parameters": {"order": 1},
    }
    path = write_job(tmp_path, job)
    assert main(["run", "--job", path]) == 0


def test_product_table_text_alignment(tmp_path):
    path = write_job(tmp_path, emit_example("quantum-plane"))
    out = tmp_path / "r.txt"
    main(["run", "--job", path, "--format", "text", "--out", str(out)])
    text = out.read_text()
    assert "product table:" in text
    import re

    assert re.search(r"p\s+\*\s+q\s+=", text)
