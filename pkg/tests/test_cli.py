import json

import pytest

from poisson_coact.cli import main
from poisson_coact.fixtures import bad_unit_bracket, dual_numbers, field, square_zero_lie
from poisson_coact.serialize import (
    algebra_from_dict,
    algebra_to_dict,
    load_presentation,
    presentation_to_dict,
    save_algebra,
)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, make in [("F", field), ("dual", dual_numbers), ("lie", square_zero_lie), ("bad", bad_unit_bracket)]:
        paths[name] = str(tmp_path / f"{name}.json")
        save_algebra(make(), paths[name])
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(files, capsys):
    code, out, _ = run(capsys, "validate", files["dual"])
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "validate", files["bad"])
    doc = json.loads(out)
    assert code == 1
    leibniz = [c for c in doc["checks"] if c["name"] == "leibniz"][0]
    assert leibniz["witness"] == [0, 0, 1]
    code, out, _ = run(capsys, "validate", files["bad"], "--pretty")
    assert "FAIL  leibniz  witness=[0, 0, 1]" in out


def test_input_errors(files, capsys):
    bad = files["dir"] / "broken.json"
    bad.write_text("{ not json")
    assert run(capsys, "validate", bad)[0] == 2
    assert run(capsys, "validate", files["dir"] / "missing.json")[0] == 2
    wrong = files["dir"] / "wrong.json"
    wrong.write_text(json.dumps({"dim": 2, "basis": ["1", "x"], "mul": [[0, 0, 7, "1"]]}))
    assert run(capsys, "validate", wrong)[0] == 2
    wrong.write_text(json.dumps({"dim": 1, "basis": ["1"], "mul": [[0, 0, 0, "1/0"]]}))
    assert run(capsys, "validate", wrong)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_build_field(files, capsys):
    out = files["dir"] / "bf.json"
    code, _, err = run(capsys, "build", "--p", files["F"], "--degree", 3, "--out", out)
    assert code == 0 and "margin_stable True" in err
    doc = json.loads(out.read_text())
    assert doc["quotient_dims"] == [1, 0, 0, 0]
    assert doc["coalgebra"]["delta"]["h_0_0"] == [["1", [[0]], [[0]]]]
    assert doc["coalgebra"]["epsilon"] == {"h_0_0": "1"}
    assert doc["generators"] == [{"row": 0, "col": 0, "name": "h_0_0"}]


def test_build_dual_and_reload(files, capsys):
    out = files["dir"] / "bd.json"
    assert run(capsys, "build", "--p", files["dual"], "--out", out)[0] == 0
    doc = json.loads(out.read_text())
    assert doc["meta"] == {"degree": 3, "margin": 2, "margin_stable": True, "relation_count": 18,
                           "reduced_basis_size": len(load_presentation(out).ctx.basis)}
    assert len(doc["relations"]) == 2 * (1 + 4) + 2 * 4
    assert doc["psi"] == [["h_0_0", "h_1_0"], ["h_0_1", "h_1_1"]]
    pres = load_presentation(out)
    assert pres.quotient_dims() == doc["quotient_dims"]
    assert presentation_to_dict(pres) == doc


def test_build_with_field_u(files, capsys):
    out = files["dir"] / "bdf.json"
    assert run(capsys, "build", "--p", files["dual"], "--u", files["F"], "--out", out)[0] == 0
    doc = json.loads(out.read_text())
    assert sum(doc["quotient_dims"]) == 2
    assert "coalgebra" not in doc


def test_build_budget_and_invalid(files, capsys):
    code, _, err = run(capsys, "build", "--p", files["lie"], "--budget", 10)
    assert code == 3 and "exceeds budget 10" in err
    assert run(capsys, "build", "--p", files["bad"])[0] == 1
    # skipping validation lets the bad table through to the engine
    assert run(capsys, "build", "--p", files["bad"], "--skip-validate", "--degree", 2)[0] == 0


def test_verify(files, capsys):
    pres = files["dir"] / "bd.json"
    run(capsys, "build", "--p", files["dual"], "--out", pres)
    code, out, _ = run(capsys, "verify", "--pres", pres)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["verified_at"] == {"degree": 3, "margin": 2}

    pf = files["dir"] / "bdf.json"
    run(capsys, "build", "--p", files["dual"], "--u", files["F"], "--out", pf)
    (files["dir"] / "f.json").write_text(json.dumps([["1", "0"]]))
    (files["dir"] / "g.json").write_text(json.dumps([["1"], ["0"]]))
    code, out, err = run(capsys, "verify", "--pres", pf, "--f", files["dir"] / "f.json",
                         "--g", files["dir"] / "g.json")
    doc = json.loads(out)
    assert code == 1 and "compat-3.9" in err
    check = [c for c in doc["checks"] if c["name"] == "compat-3.9"][0]
    assert check["witness"] == [1]
    assert all("witness" in c for c in doc["checks"] if not c["passed"])
    assert run(capsys, "verify", "--pres", pf, "--f", files["dir"] / "f.json")[0] == 2


def test_solve(files, capsys):
    pres = files["dir"] / "bd.json"
    run(capsys, "build", "--p", files["dual"], "--out", pres)
    f = files["dir"] / "triv.json"
    f.write_text(json.dumps([["1", "0"], ["0", "1"]]))
    code, out, _ = run(capsys, "solve", "--pres", pres, "--q", files["F"], "--f", f)
    doc = json.loads(out)
    assert code == 0 and doc["round_trip"]
    assert doc["generator_map"] == {"h_0_0": ["1"], "h_0_1": ["0"], "h_1_0": ["0"], "h_1_1": ["1"]}
    f.write_text(json.dumps([["1", "0"], ["1", "1"]]))
    code, out, err = run(capsys, "solve", "--pres", pres, "--q", files["F"], "--f", f)
    assert code == 1 and json.loads(out)["checks"][0]["witness"] == [1, 1, 0]
    f.write_text(json.dumps([["1", "0", "0"]]))
    assert run(capsys, "solve", "--pres", pres, "--q", files["F"], "--f", f)[0] == 2


def test_export(files, capsys):
    pres = files["dir"] / "bf.json"
    run(capsys, "build", "--p", files["F"], "--out", pres)
    code, out, _ = run(capsys, "export", "--pres", pres, "--format", "latex")
    assert code == 0 and "h_{1,1} - 1" in out
    code, out, _ = run(capsys, "export", "--pres", pres, "--format", "json")
    assert out == pres.read_text()
    assert run(capsys, "export", "--pres", pres, "--format", "yaml")[0] == 2

    pd = files["dir"] / "bd.json"
    run(capsys, "build", "--p", files["dual"], "--out", pd)
    code, out, _ = run(capsys, "export", "--pres", pd, "--format", "text")
    lines = [ln for ln in out.splitlines() if ln and not ln.startswith("#")]
    n, p = 2, 2
    assert len(lines) == n * (1 + p * p) + n * p * p


def test_tampered_presentation(files, capsys):
    pres = files["dir"] / "bd.json"
    run(capsys, "build", "--p", files["dual"], "--out", pres)
    doc = json.loads(pres.read_text())
    doc["quotient_dims"][2] += 1
    pres.write_text(json.dumps(doc))
    assert run(capsys, "verify", "--pres", pres)[0] == 2


def test_algebra_round_trip():
    for make in (field, dual_numbers, square_zero_lie):
        A = make()
        assert algebra_from_dict(algebra_to_dict(A)) == A


def test_unit_not_first(files, capsys):
    doc = {"dim": 2, "basis": ["x", "1"], "unit": "1",
           "mul": [[1, 1, 1, "1"], [0, 1, 0, "1"], [1, 0, 0, "1"]], "bracket": []}
    A = algebra_from_dict(doc)
    assert A.basis == ("1", "x")
    path = files["dir"] / "swapped.json"
    path.write_text(json.dumps(doc))
    assert run(capsys, "validate", path)[0] == 0
