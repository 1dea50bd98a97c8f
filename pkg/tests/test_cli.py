import json

from monoglue.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_primes(capsys):
    code, out, _ = run(capsys, "primes", "F1[x,y]")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) == {"object", "bound", "result", "flags"}
    assert [p["trace"] for p in rep["result"]] == [[], ["x"], ["y"], ["x", "y"]]


def test_classify(capsys):
    code, out, _ = run(capsys, "classify-hom", "loc_x")
    assert code == 0
    assert json.loads(out)["result"]["open_immersion"] == "x"


def test_degree_bound_reported(capsys, monkeypatch):
    monkeypatch.delenv("MONOGLUE_DEGREE_BOUND", raising=False)
    code, out, _ = run(capsys, "--degree-bound", "6", "primes", "A2")
    assert json.loads(out)["bound"] == 6
    monkeypatch.delenv("MONOGLUE_DEGREE_BOUND", raising=False)


def test_dot(capsys):
    code, out, _ = run(capsys, "--dot", "spec", "K")
    assert out.startswith('digraph "K"') and "p0 -> p1;" in out


def test_scheme_commands(capsys):
    for argv, key, want in [
        (("points", "P1"), "count", 3),
        (("hom", "C2", "P1"), "count", 2),
        (("evaluate", "P2", "C3"), "count", 9),
    ]:
        code, out, _ = run(capsys, *argv)
        assert code == 0 and json.loads(out)["flags"][key] == want
    code, out, _ = run(capsys, "base-change", "P1")
    assert json.loads(out)["result"]["transitions"][0]["images"] == {"y": "1/x"}
    code, out, _ = run(capsys, "glue", "P2")
    assert json.loads(out)["result"]["overlaps"]["U0|U1"] == "x1"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "primes", "Nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.mg"
    bad.write_text("monoid M\n gen x\n rel x^2 =\nend\n")
    code, _, err = run(capsys, "-f", str(bad), "primes", "M")
    diag = json.loads(err)
    assert code == 2 and (diag["line"], diag["column"]) == (3, 11)
    assert run(capsys, "verify", "99")[0] == 2


def test_user_file(capsys, tmp_path):
    f = tmp_path / "mine.mg"
    f.write_text(
        "monoid M\n gen s t\n rel s*t = 1\nend\nhom g : A2 -> M\n x -> s\n y -> t\nend\n"
        "monoid L\n gen s t w\n rel s*t*w = 1\nend\nhom h : A2 -> L\n x -> s\n y -> t\nend\n"
    )
    code, out, _ = run(capsys, "-f", str(f), "classify-hom", "h")
    assert code == 0
    assert json.loads(out)["result"]["open_immersion"] == "x*y"
    # onto Z with y = 1/x: x and y both invert but the result is too small
    code, out, _ = run(capsys, "-f", str(f), "classify-hom", "g")
    v = json.loads(out)["result"]
    assert v["open_immersion"] is None and "M_p -> N is not an isomorphism" in v["reasons"]


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "9")
    rep = json.loads(out)
    assert code == 0 and rep["flags"]["passed"]
    assert rep["result"][0]["details"] == {"g_points": 2, "hom_schemes": 2}
