import json

import pytest

from hqft.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    return status, out


def report(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out)


def test_group_check(capsys, data_dir):
    st, r = report(capsys, "group", "check", "--in", str(data_dir / "klein.json"))
    assert st == 0 and r["order"] == 4
    st, r = report(capsys, "group", "check", "--in", str(data_dir / "not-a-group.json"))
    assert st == 1 and r["axiom"] == "associativity"
    st, r = report(capsys, "group", "check", "--in", str(data_dir / "missing.json"))
    assert st == 2 and "no such file" in r["message"]


def test_cocycle_commands(capsys, data_dir, tmp_path):
    st, r = report(capsys, "cocycle", "check", "--in", str(data_dir / "klein-theta.json"))
    assert st == 0 and r["cocycle"] == "valid"
    st, r = report(capsys, "cocycle", "cohomologous", "--in", str(data_dir / "klein-theta.json"),
                   "--other", str(data_dir / "klein-zero.json"))
    assert st == 0 and r["cohomologous"] is False and r["beta"] is None
    st, r = report(capsys, "cocycle", "random", "--group", str(data_dir / "s3.json"), "--den", "6", "--seed", "4")
    assert st == 0
    path = tmp_path / "c.json"
    doc = r["cocycle"]
    path.write_text(json.dumps(doc))
    st, r = report(capsys, "cocycle", "normalize", "--in", str(path))
    assert st == 0 and r["cocycle"]["values"][0] == [0] * 6
    doc["values"][1][2] = (doc["values"][1][2] + 1) % 6
    path.write_text(json.dumps(doc))
    st, r = report(capsys, "cocycle", "check", "--in", str(path))
    assert st == 1 and r["cocycle"] == "invalid" and len(r["witness"]) == 3
    path.write_text("{not json")
    st, r = report(capsys, "cocycle", "check", "--in", str(path))
    assert st == 2


def test_algebra_commands(capsys, data_dir, tmp_path):
    st, r = report(capsys, "algebra", "verify", "--in", str(data_dir / "broken.json"))
    assert st == 1 and "eta-nondegenerate" in r["failed_axioms"] and r["witness"] is not None
    st, r = report(capsys, "algebra", "verify", "--in", str(data_dir / "s3-algebra.json"))
    assert st == 0 and r["passed"]
    st, r = report(capsys, "algebra", "from-cocycle", "--in", str(data_dir / "klein-theta.json"))
    assert st == 0
    path = tmp_path / "a.json"
    path.write_text(json.dumps(r["algebra"]))
    st, r = report(capsys, "algebra", "verify", "--in", str(path), "--tol", "0")
    assert st == 0
    st, r = report(capsys, "algebra", "group-algebra", "--group", str(data_dir / "d4.json"))
    assert st == 0 and r["algebra"]["dims"] == [1] * 8


def test_expr_commands(capsys, data_dir):
    g = str(data_dir / "klein.json")
    st, r = report(capsys, "expr", "parse", "--group", g, "--text", "counit.mult[x,x]")
    assert st == 0 and r["canonical"] == "counit . mult[x, x]"
    st, r = report(capsys, "expr", "parse", "--group", g, "--text", "mult[x")
    assert st == 2 and r["error"] == "ParseError"
    st, r = report(capsys, "expr", "typecheck", "--group", g, "--text", "counit . mult[x,y]")
    assert st == 1 and r["well_typed"] is False
    st, r = report(capsys, "expr", "typecheck", "--group", g, "--text", "pair[x] . swap[x,x] . copair[x]")
    assert st == 0 and r["source"] == [] and r["target"] == []
    st, r = report(capsys, "expr", "eval", "--algebra", str(data_dir / "s3-algebra.json"), "--text", "id[c]")
    assert st == 0 and r["matrix"]["entries"] == [[[1.0, 0.0]]]


def test_surface_commands(capsys, data_dir):
    st, r = report(capsys, "surface", "invariant", "--in", str(data_dir / "genus2.json"),
                   "--cocycle", str(data_dir / "klein-theta.json"))
    assert st == 0 and r["state_sum_phase"] == "1/2" and r["invariant"][0] == pytest.approx(-1)
    st, r = report(capsys, "surface", "statesum", "--in", str(data_dir / "torus-xy.json"),
                   "--cocycle", str(data_dir / "klein-theta.json"))
    assert st == 0 and r["phase"] == "1/2" and r["diagnostics"]["genus"] == 1
    st, r = report(capsys, "surface", "reverse", "--in", str(data_dir / "torus-xy.json"),
                   "--cocycle", str(data_dir / "klein-theta.json"))
    assert st == 0 and r["reversed_phase"] == "1/2" and r["surface"]["triangles"][0]["sign"] == -1
    st, r = report(capsys, "surface", "invariant", "--in", str(data_dir / "genus2.json"))
    assert st == 2


def test_surface_statesum_invalid(capsys, data_dir, tmp_path):
    doc = json.loads((data_dir / "torus-xy.json").read_text())
    doc["group"] = str(data_dir / "klein.json")
    doc["pairings"] = doc["pairings"][:2]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    st, r = report(capsys, "surface", "statesum", "--in", str(path), "--cocycle", str(data_dir / "klein-theta.json"))
    assert st == 2 and not r["diagnostics"]["valid"]


def test_pachner_fuzz(capsys, data_dir):
    argv = ["pachner", "fuzz", "--group", str(data_dir / "klein.json"), "--cocycle",
            str(data_dir / "klein-theta.json"), "--seed", "7", "--moves", "20", "--cases", "100"]
    st, out1 = run(capsys, *argv)
    st2, out2 = run(capsys, *argv)
    r = json.loads(out1)
    assert st == st2 == 0 and out1 == out2
    assert len(r["cases"]) == 100 and all(c["constant"] for c in r["cases"]) and r["skip_rate"] < 0.5


def test_pi2_commands(capsys, data_dir):
    st, r = report(capsys, "pi2", "verify", "--in", str(data_dir / "z2t.json"), "--tol", "1e-12")
    assert st == 0
    st, r = report(capsys, "pi2", "verify", "--in", str(data_dir / "z2t-broken.json"))
    assert st == 1 and r["failed_axiom"] == "action-homomorphism"
    st, r = report(capsys, "pi2", "eval", "--in", str(data_dir / "z2t.json"), "--text", "id[0]", "--label", "1")
    assert st == 0 and r["matrix"]["entries"][0][1] == [1.0, 0.0]


def test_tolerance_contract(capsys, data_dir, monkeypatch):
    st, r = report(capsys, "algebra", "verify", "--in", str(data_dir / "s3-algebra.json"), "--tol", "-1")
    assert st == 2
    monkeypatch.setenv("HQFT_DEFAULT_TOL", "abc")
    st, r = report(capsys, "algebra", "verify", "--in", str(data_dir / "s3-algebra.json"))
    assert st == 2
    monkeypatch.setenv("HQFT_DEFAULT_TOL", "1e-6")
    st, r = report(capsys, "algebra", "verify", "--in", str(data_dir / "s3-algebra.json"))
    assert st == 0 and r["tol"] == 1e-6


def test_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_human_format(capsys, data_dir):
    st, out = run(capsys, "cocycle", "check", "--in", str(data_dir / "klein-theta.json"), "--format", "human")
    assert st == 0 and "cocycle: valid" in out


def test_accept_subset(capsys):
    st, r = report(capsys, "accept", "--only", "1,3,7")
    assert st == 0 and [c["id"] for c in r["criteria"]] == [1, 3, 7]
