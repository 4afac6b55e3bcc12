import json

import pytest

from overlapkit.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "args,want",
    [
        (("--catalog", "product-pair", "--a", "2", "--x", "0.5", "--y", "0.4"), 0.2),
        (("--catalog", "nonassoc-log", "--a", "1", "--x", "1", "--y", "1"), 1.0),
        # (0.25 / 1.25)^2
        (("--catalog", "hamacher-squared", "--a", "1", "--x", "0.5", "--y", "0.5"), 0.04),
    ],
)
def test_eval(capsys, args, want):
    code, out, _ = run(capsys, "eval", *args)
    assert code == 0 and abs(float(out) - want) < 1e-12


def test_eval_points_and_formats(capsys, tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text("0.5,0.4\n1,1\n0,0.3\n")
    code, out, _ = run(capsys, "eval", "--catalog", "product-pair", "--a", "2", "--points", str(pts))
    assert code == 0 and len(out.split()) == 3
    code, out, _ = run(capsys, "eval", "--catalog", "product", "--x", "0.5", "--y", "0.5", "--output", "json")
    assert json.loads(out) == [{"x": 0.5, "y": 0.5, "value": 0.25}]
    code, out, _ = run(capsys, "eval", "--catalog", "product", "--x", "0.5", "--y", "0.5", "--output", "csv")
    assert out == "x,y,value\n0.5,0.5,0.25\n"


def test_eval_errors(capsys):
    assert run(capsys, "eval", "--catalog", "nope", "--x", "0", "--y", "0")[0] == 2
    assert run(capsys, "eval", "--catalog", "product", "--x", "2", "--y", "0")[0] == 3
    assert run(capsys, "eval", "--catalog", "product")[0] == 3
    assert run(capsys, "eval", "--catalog", "nonassoc-log", "--a", "0", "--x", "1", "--y", "1")[0] == 3


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "--catalog", "product", "--bogus"])
    assert e.value.code == 3
    assert run(capsys, "verify", "--catalog", "product", "--grid-n", "2")[0] == 3
    assert run(capsys, "verify", "--catalog", "product", "--tol", "0")[0] == 3


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--catalog", "nonassoc-log", "--a", "1", "--as", "overlap")
    rep = json.loads(out)
    assert code == 0 and [r["verdict"] for r in rep["axioms"]] == ["pass"] * 5
    code, out, _ = run(capsys, "verify", "--catalog", "nonassoc-log", "--a", "1", "--as", "tnorm")
    bad = {r["id"] for r in json.loads(out)["axioms"] if r["verdict"] == "fail"}
    assert code == 1 and {"T2", "T4"} <= bad
    assert run(capsys, "verify", "--catalog", "product-pair", "--a", "2", "--as", "tnorm")[0] == 0


def test_verify_modes(capsys):
    assert run(capsys, "verify", "--catalog", "product-pair", "--a", "2", "--dual")[0] == 0
    assert run(capsys, "verify", "--catalog", "product-pair", "--a", "2", "--as", "pair")[0] == 0
    assert run(capsys, "verify", "--catalog", "product-pair-dual", "--a", "2", "--as", "necessary")[0] == 0
    assert run(capsys, "verify", "--catalog", "product", "--as", "pair")[0] == 3
    code, out, _ = run(capsys, "verify", "--catalog", "lukasiewicz", "--output", "human")
    assert code == 1 and "O2" in out and "fail" in out
    code, out, _ = run(capsys, "verify", "--catalog", "lukasiewicz", "--output", "csv")
    assert out.splitlines()[0] == "id,verdict,x,y,z,defect"
    assert any(line.startswith("O2,fail,0.5,0.5,,") for line in out.splitlines())


def test_classify_examples(capsys):
    code, out, _ = run(capsys, "classify", "--catalog", "product-pair", "--a", "2")
    d = json.loads(out)
    assert code == 0
    assert {k: v["verdict"] for k, v in d["equivalence"]["statements"].items()} == {
        "is_tnorm": "pass",
        "neutral_1": "pass",
        "vartheta_comp_identity": "pass",
    }
    assert d["representability"]["verdict"] == "strict-distortion"
    d = json.loads(run(capsys, "classify", "--catalog", "nonassoc-log", "--a", "1")[1])
    assert {v["verdict"] for v in d["equivalence"]["statements"].values()} == {"fail"} and d["consistent"]
    d = json.loads(run(capsys, "classify", "--catalog", "plateau-pair", "--a", "1")[1])
    assert d["representability"]["verdict"] == "not-positive-ctnorm-distortion"
    d = json.loads(run(capsys, "classify", "--catalog", "nonassoc-log-dual", "--a", "1")[1])
    assert d["consistent"] is True and "is_tconorm" in d["equivalence"]["statements"]
    d = json.loads(run(capsys, "classify", "--catalog", "hamacher")[1])
    assert d["archimedean"]["verdict"] == "pass"


def test_decompose_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", "--catalog", "hamacher-squared", "--a", "1", "--csv-dir", str(tmp_path))
    assert code == 0 and json.loads(out)["reconstruction_error"] < 1e-6
    rows = (tmp_path / "F.csv").read_text().splitlines()
    assert rows[0] == "x,value" and len(rows) == 102
    for line in rows[1:]:
        x, v = map(float, line.split(","))
        assert abs(v - x * x) < 1e-6
    assert {p.name for p in tmp_path.iterdir()} == {"F.csv", "T_sub.csv", "phi.csv", "H.csv"}
    run(capsys, "decompose", "--catalog", "product-pair", "--a", "2", "--csv-dir", str(tmp_path / "p"), "--samples", "11")
    for line in (tmp_path / "p" / "F.csv").read_text().splitlines()[1:]:
        x, v = map(float, line.split(","))
        assert abs(v - x) < 1e-8


def test_decompose_out_of_hypothesis(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({
        "a": 1, "theta": {"family": "log-offset", "offset": 1}, "vartheta": {"family": "exp", "cut": 2}
    }))
    code, _, err = run(capsys, "decompose", "--spec", str(spec))
    assert code == 4 and "HypothesisUnmet" in err


def test_export_grid(capsys, tmp_path):
    code, out, _ = run(capsys, "export-grid", "--catalog", "product-pair", "--a", "1", "--grid-n", "3")
    rows = out.splitlines()
    assert code == 0 and rows[0] == "x,y,value" and len(rows) == 10
    assert "1,1,1" in rows and "0,1,0" in rows
    out = run(capsys, "export-grid", "--catalog", "nonassoc-log", "--a", "1", "--grid-n", "3")[1]
    assert "1,1,1" in out.splitlines()
    f = tmp_path / "g.csv"
    run(capsys, "export-grid", "--catalog", "product-pair", "--a", "1", "--dual", "--grid-n", "3", "--out", str(f))
    data = f.read_bytes()
    assert b"\r" not in data and "0,0,0" in data.decode().splitlines()


def test_sweep_and_list(capsys):
    code, out, _ = run(capsys, "sweep", "--seed", "1", "--count", "3")
    d = json.loads(out)
    assert code == 0 and d["all_ok"] and len(d["pairs"]) == 3
    code, out, _ = run(capsys, "list")
    assert "hamacher-squared" in out


def test_byte_identical_output(capsys):
    a = run(capsys, "classify", "--catalog", "hamacher-squared", "--a", "1")[1]
    b = run(capsys, "classify", "--catalog", "hamacher-squared", "--a", "1")[1]
    assert a == b
