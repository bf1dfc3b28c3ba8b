import json
import subprocess
import sys

import pytest

from bruhatsmooth.cli import main

from helpers import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "D4", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 192 and doc["reflections"] == 12
    assert doc["exponents"] == [1, 3, 3, 5]
    code, out, _ = run(capsys, "info", "G2")
    assert code == 0 and "|W|           12" in out


def test_graph_dot_matches_golden(capsys):
    code, out, _ = run(capsys, "graph", "A2", "1 2 1")
    assert code == 0
    assert out == (DATA / "a2_longest.dot").read_text()


def test_graph_json_and_text(capsys):
    _, out, _ = run(capsys, "graph", "D4", "21342", "--format", "json")
    doc = json.loads(out)
    assert len(doc["vertices"]) == 30 and len(doc["edges"]) == 77
    _, out, _ = run(capsys, "graph", "D4", "2,1,3,4,2", "--format", "text")
    assert out.startswith("B(21342) in D4: 30 vertices, 77 edges")


def test_smooth(capsys):
    code, out, _ = run(capsys, "smooth", "D4", "2 1 3 4 2")
    doc = json.loads(out)
    assert code == 0
    assert doc["rhombus"] == {"x": "23", "u": "2", "v": "12", "witnesses": ["123", "21321"]}
    assert doc["defect"] == {"vertex": "e", "degree": 7} and doc["smooth"] is False
    _, out, _ = run(capsys, "smooth", "D4", "21342", "--all-rhombi")
    assert len(json.loads(out)["rhombi"]) == 6
    _, out, _ = run(capsys, "smooth", "C2", "121", "--format", "text")
    assert "rationally smooth (smoothness undecided)" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "A3", "--no-timing")
    doc = json.loads(out)
    assert code == 0 and doc["involution_count"] == 10 and doc["equivalence_holds"]
    assert "elapsed_ms" not in doc
    code, out, _ = run(capsys, "verify", "C2", "--format", "text")
    assert code == 0 and "mismatches: 121, 212" in out


def test_verify_requires_long_run(capsys):
    code, _, err = run(capsys, "verify", "E6")
    assert code == 2 and "long-run" in err


def test_subgroup(capsys):
    code, out, _ = run(capsys, "subgroup", "A3", "1", "232", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["order"] == 6 and doc["canonical_generators"] == ["1", "232"]
    assert doc["m"] == 3 and doc["coxeter_system"] and doc["graphs_match"]
    code, out, _ = run(capsys, "subgroup", "A2", "1", "121", "--format", "dot")
    assert code == 0 and "// X = {1, 2}" in out
    code, _, err = run(capsys, "subgroup", "A3", "12")
    assert code == 1 and "not a reflection" in err


def test_crossval(capsys):
    code, out, _ = run(capsys, "crossval", "B2", "--format", "text")
    assert code == 0 and out == "B2: 8 elements, 8 rationally smooth, 0 disagreements\n"


@pytest.mark.parametrize("argv, code", [
    (["info", "X9"], 1),
    (["graph", "A2", "1 5"], 1),
    (["graph", "A2", "1 x"], 1),
    (["smooth"], 1),
    (["frobnicate"], 1),
    (["graph", "D4", "1", "--cap", "10"], 2),
])
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as exc:  # argparse usage errors
        got = exc.code
    assert got == code


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("BRUHATSMOOTH_CAP", "10")
    assert main(["graph", "D4", "1"]) == 2
    assert "above the cap of 10" in capsys.readouterr().err


def test_cartan_file(capsys, tmp_path):
    p = tmp_path / "g2.txt"
    p.write_text("# G2\n2\n2 -1\n-3 2\n")
    code, out, _ = run(capsys, "info", str(p), "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 12
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 1\n1 2\n")
    assert run(capsys, "info", str(bad))[0] == 1


def test_byte_determinism():
    cmds = [
        ["graph", "D4", "21342"],
        ["smooth", "D4", "21342", "--all-rhombi"],
        ["verify", "D4", "--no-timing"],
        ["subgroup", "D4", "1", "2", "--format", "dot"],
    ]
    for argv in cmds:
        runs = [
            subprocess.run([sys.executable, "-m", "bruhatsmooth", *argv], capture_output=True, check=True).stdout
            for _ in range(2)
        ]
        assert runs[0] == runs[1] and runs[0]
