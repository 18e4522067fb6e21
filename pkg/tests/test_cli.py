import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from qpmut.cli import run
from qpmut.corpus import load_fixture
from qpmut.serialize import (dumps, element_from_json, element_to_json, qp_from_json, qp_to_json, rep_from_json,
                             rep_to_json)


def ok(argv):
    status, text = run(argv)
    assert status == 0, text
    return json.loads(text)


def err(argv):
    status, text = run(argv)
    assert status == 2
    return json.loads(text)["error"]


def test_qp_round_trip(tri):
    doc = qp_to_json(tri)
    P = qp_from_json(json.loads(dumps(doc)))
    assert P.quiver == tri.quiver and P.potential.terms == tri.potential.terms and P.N == tri.N
    assert qp_to_json(P) == doc


def test_element_and_rep_round_trip():
    doc = load_fixture("rep_example")
    P = qp_from_json(doc["qp"])
    x = P.potential.scale(Fraction(-3, 7))
    assert element_from_json(P.quiver, P.N, element_to_json(x)).terms == x.terms
    for r in doc["reps"]:
        M = rep_from_json(P.quiver, r)
        assert rep_from_json(P.quiver, json.loads(dumps(rep_to_json(M)))) == M


def test_rationals_written_as_strings(tmp_path):
    src = tmp_path / "half.json"
    src.write_text(json.dumps({"quiver": {"vertices": ["1", "2", "3"], "arrows": [
        {"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "3"},
        {"name": "c", "from": "3", "to": "1"}]}, "potential": [{"coeff": "1/2", "path": ["a", "b", "c"]}]}))
    out = ok(["qp", "premutate", "--in", str(src), "--at", "2"])
    coeffs = [t["coeff"] for t in out["qp"]["potential"]]
    assert "1/2" in coeffs and all(isinstance(c, str) for c in coeffs)


def test_jacobian_dim():
    assert ok(["jacobian", "dim", "--in", "tri"]) == {"dim": 6, "certified": True, "nilpotency": 2}


def test_quiver_commands():
    assert ok(["quiver", "info", "--in", "a3"]) == {"vertices": 3, "arrows": 2, "loops": [], "two_cycles": []}
    B = ok(["quiver", "bmatrix", "--in", "a3"])
    assert B["b_matrix"] == [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    assert ok(["quiver", "mutate", "--in", "a3", "--at", "2"])


def test_output_is_deterministic():
    a = run(["qp", "mutate", "--in", "tri", "--at", "1", "--seed", "5"])
    b = run(["qp", "mutate", "--in", "tri", "--at", "1", "--seed", "5"])
    assert a == b and a[0] == 0


def test_out_flag_writes_document(tmp_path):
    target = tmp_path / "res.json"
    status, text = run(["jacobian", "certify", "--in", "a3", "--out", str(target)])
    assert status == 0
    assert json.loads(target.read_text()) == json.loads(text)


def test_missing_file_is_structured_error(tmp_path):
    e = err(["qp", "validate", "--in", str(tmp_path / "nope.json")])
    assert e["code"] in ("io", "structural") and e["message"]


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert err(["qp", "validate", "--in", str(bad)])["code"] in ("io", "structural", "malformed")


def test_precondition_error_for_two_cycle(tmp_path):
    src = tmp_path / "two.json"
    src.write_text(json.dumps({"quiver": {"vertices": ["1", "2"], "arrows": [
        {"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}]}, "potential": []}))
    e = err(["qp", "premutate", "--in", str(src), "--at", "1"])
    assert e["code"] == "precondition"


def test_truncation_below_three_rejected():
    status, _ = run(["qp", "mutate", "--in", "tri", "--at", "1", "--truncation", "2"])
    assert status == 2


def test_unknown_vertex(tmp_path):
    e = err(["qp", "mutate", "--in", "tri", "--at", "9"])
    assert e["code"] == "precondition" and e["datum"] == "9"


def test_rep_commands():
    assert ok(["rep", "validate", "--in", "rep_example"])
    out = ok(["rep", "mutate", "--in", "rep_example", "--at", "2"])
    assert out
    assert ok(["rep", "morphism-mutate", "--in", "rep_example_morphism", "--at", "2"])


def test_coxeter_commands():
    r = ok(["coxeter", "reduced", "--base", "coxeter_word", "--word", "1,2,1"])
    assert r["reduced"] and r["roots"][1] == ["1", "1", "0"]
    assert not ok(["coxeter", "reduced", "--base", "coxeter_word", "--word", "1,1"])["reduced"]
    q = ok(["coxeter", "quiver", "--in", "coxeter_word"])
    assert len(q["vertices"]) == 11


def test_fixture_dir_override(tmp_path):
    (tmp_path / "mine.json").write_text(json.dumps(load_fixture("a3")))
    env = dict(os.environ, QPMUT_FIXTURES=str(tmp_path))
    r = subprocess.run([sys.executable, "-m", "qpmut.cli", "jacobian", "dim", "--in", "mine"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0, r.stderr
    assert json.loads(r.stdout)["dim"] == 6


def test_selftest_exit_status():
    r = subprocess.run([sys.executable, "-m", "qpmut.cli", "selftest", "--format", "pretty"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.strip().endswith("14/14 criteria passed")


def test_qp_mutate_three_cycle():
    out = ok(["qp", "mutate", "--in", "tri", "--at", "2"])
    assert out["new_vertex"] == "2*" and out["qp"]["potential"] == []
    assert {(a["from"], a["to"]) for a in out["qp"]["quiver"]["arrows"]} == {("2*", "1"), ("3", "2*")}
