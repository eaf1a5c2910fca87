import io
import json
import subprocess
import sys

import pytest

from biasmat.cli import main

TRI = "vertex a\nvertex b\nvertex c\nedge e1 a b\nedge e2 b c\nedge e3 c a\n"
FAT3 = "bias none\nvertex x\nvertex y\nedge e1 x y\nedge e2 x y\nedge e3 x y\n"
C4 = "vertex 0\nvertex 1\nvertex 2\nvertex 3\nedge a 0 1\nedge b 1 2\nedge c 2 3\nedge d 3 0\n"
PINCH_C4 = "bias signed\nvertex v\nvertex 1\nvertex 3\nedge a v 1 sign=-\nedge b 1 v\nedge c v 3 sign=-\nedge d 3 v\n"
U24 = "bias none\nvertex x\nvertex y\nedge a x y\nedge b x y\nedge c x y\nedge d x y\n"
LOOPS = "bias signed\nvertex p\nvertex q\nedge l p p sign=-\nedge m q q sign=-\nedge e p q\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("tri", TRI), ("fat3", FAT3), ("c4", C4), ("pinch_c4", PINCH_C4), ("u24", U24), ("loops", LOOPS)]:
        p = tmp_path / f"{name}.bg"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_circuits_cycle(files):
    assert run("circuits", files["tri"], "--matroid", "cycle") == (0, "e1 e2 e3\n")


def test_circuits_json(files):
    code, out = run("circuits", files["tri"], "--json")
    assert code == 0
    assert json.loads(out) == {"matroid": "auto", "ground": ["e1", "e2", "e3"], "circuits": [["e1", "e2", "e3"]]}


def test_circuits_frame_vs_lift(files):
    assert run("circuits", files["loops"], "--matroid", "frame") == (0, "e l m\n")
    assert run("circuits", files["loops"], "--matroid", "lift") == (0, "l m\n")
    assert run("circuits", files["fat3"], "--matroid", "lift")[0] == 2


def test_classify_fat_theta(files):
    code, out = run("classify", files["fat3"])
    assert code == 0
    assert out == (
        "form=fat_theta\nwitness=fat_theta\n# h\n"
        "vertex w1\nvertex w2\nvertex w3\nedge e1 w1 w3\nedge e2 w1 w2\nedge e3 w2 w3\n"
    )


def test_classify_json_and_out_h(files, tmp_path):
    h = tmp_path / "h.bg"
    code, out = run("classify", files["fat3"], "--json", "--out-h", str(h))
    doc = json.loads(out)
    assert code == 0 and doc["graphic"] and doc["witness"]["family"] == "fat_theta"
    assert doc["forms"] == [{"form": "fat_theta", "edges": ["e1", "e2", "e3"]}]
    assert h.read_text().startswith("vertex w1\n")


def test_classify_not_binary(files):
    code, out = run("classify", files["u24"])
    assert code == 1
    assert out.startswith("form=not_binary\nwitness=none\nreason=")


def test_check_iso(files):
    assert run("check-iso", files["c4"], files["pinch_c4"]) == (0, "a -> a\nb -> b\nc -> c\nd -> d\n")
    assert run("check-iso", files["c4"], files["tri"]) == (1, "NOT-ISOMORPHIC\n")
    code, out = run("check-iso", files["c4"], files["pinch_c4"], "--matroid", "cycle", "frame", "--json")
    assert code == 0 and json.loads(out)["isomorphic"]


def test_construct_pinch(tmp_path):
    spec = tmp_path / "pinch.json"
    spec.write_text(json.dumps({"h": {"edges": [["a", "0", "1"], ["b", "1", "2"], ["c", "2", "3"], ["d", "3", "0"]]}, "v1": "0", "v2": "2"}))
    omega, h = tmp_path / "o.bg", tmp_path / "h.bg"
    code, out = run("construct", "pinch", str(spec), "--out", str(omega), "--out-h", str(h))
    assert code == 0
    assert out == "family=pinch\nedges=4\nverified=true\n"
    assert omega.read_text() == (
        "bias signed\nvertex 1\nvertex 3\nvertex v\n"
        "edge a 1 v sign=-\nedge b 1 v sign=+\nedge c 3 v sign=+\nedge d 3 v sign=-\n"
    )
    assert run("check-iso", str(h), str(omega))[0] == 0


def _part(i, edges, marks):
    return {"graph": {"edges": [[f"p{i}{j}", a, b] for j, (a, b) in enumerate(edges)]}, "marks": marks}


def test_construct_consecutive_even_reports_condition(tmp_path):
    parts = [_part(i, [(f"x{i}", f"y{i}"), (f"y{i}", f"z{i}"), (f"z{i}", f"x{i}")], [f"x{i}", f"y{i}", f"z{i}"]) for i in range(4)]
    spec = tmp_path / "c.json"
    spec.write_text(json.dumps({"parts": parts}))
    code, out = run("construct", "consecutive-twisting", str(spec), "--k", "4", "--out", str(tmp_path / "o"), "--out-h", str(tmp_path / "h"))
    assert code == 1
    assert "even_condition=false\n" in out and "verified=false\n" in out
    assert run("construct", "consecutive-twisting", str(spec), "--k", "5")[0] == 2


def test_construct_fat_theta(tmp_path):
    parts = [_part(i, [(f"x{i}", f"y{i}")], [f"x{i}", f"y{i}"]) for i in range(3)]
    spec = tmp_path / "f.json"
    spec.write_text(json.dumps({"parts": parts}))
    code, out = run("construct", "fat-theta", str(spec))
    assert code == 0 and out.startswith("family=fat_theta\nedges=3\nverified=true\n# omega\nbias explicit\n")


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.bg"
    bad.write_text("vertex a\nedge e1 a zz\n")
    assert run("circuits", str(bad))[0] == 2
    assert "line 2, col 11" in capsys.readouterr().err
    theta = tmp_path / "theta.bg"
    theta.write_text("bias explicit\nvertex a\nvertex b\nedge p a b\nedge q a b\nedge r a b\nbalanced p q\nbalanced q r\n")
    assert run("classify", str(theta))[0] == 2
    assert run("circuits", str(tmp_path / "missing.bg"))[0] == 2
    spec = tmp_path / "s.json"
    spec.write_text("{not json")
    assert run("construct", "pinch", str(spec))[0] == 2
    spec.write_text("{}")
    assert run("construct", "pinch", str(spec))[0] == 2


def test_budget_exit_code(tmp_path, monkeypatch):
    big = tmp_path / "big.bg"
    big.write_text("vertex a\nvertex b\n" + "".join(f"edge e{i} a b\n" for i in range(8)))
    monkeypatch.setenv("BIASMAT_BUDGET", "6")
    assert run("classify", str(big))[0] == 3


def test_verify_suite():
    code, out = run("verify", "parser")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS [11] parser: 1000 files")
    assert out.endswith("1/1 criteria passed\n")
    assert run("verify", "nope")[0] == 2


def test_output_is_deterministic(files):
    for argv in (("classify", files["loops"]), ("circuits", files["u24"], "--json"), ("check-iso", files["c4"], files["pinch_c4"])):
        assert run(*argv) == run(*argv)
    a = subprocess.run([sys.executable, "-m", "biasmat.cli", "classify", files["fat3"]], capture_output=True, text=True)
    b = subprocess.run([sys.executable, "-m", "biasmat.cli", "classify", files["fat3"]], capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout == run("classify", files["fat3"])[1]
