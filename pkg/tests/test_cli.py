from __future__ import annotations

import json

import pytest

from curvlab.cli import run


def test_gen_then_audit(tmp_path, capsys):
    out = tmp_path / "g.rot"
    assert run(["gen", "g208", "--out", str(out), "--dot", str(tmp_path / "g.dot")]) == 0
    assert run(["audit", str(out)]) == 0
    assert "verdict: pass" in capsys.readouterr().out
    assert (tmp_path / "g.dot").read_text().startswith("graph")


def test_audit_prism_fails_with_citation(tmp_path, capsys):
    path = tmp_path / "prism5.rot"
    assert run(["gen", "prism", "5", "--out", str(path)]) == 0
    capsys.readouterr()
    assert run(["audit", str(path), "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    failed = [c["id"] for checks in data["sections"].values() for c in checks if not c["passed"]]
    assert failed == ["pcc.not-prism-or-antiprism"]


def test_global_format_flag(tmp_path, capsys):
    path = tmp_path / "a.rot"
    run(["gen", "gN", "25", "--out", str(path)])
    assert run(["--format", "json", "audit", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "pass"


def test_gen_to_stdout(capsys):
    assert run(["gen", "antiprism", "4"]) == 0
    assert capsys.readouterr().out.startswith("rotmap 1\n")


def test_table_json(capsys):
    assert run(["table", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 18
    assert run(["table"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 18


def test_discharge_report(tmp_path, capsys):
    g = tmp_path / "g.rot"
    run(["gen", "g208", "--out", str(g)])
    report = tmp_path / "r.json"
    assert run(["discharge", "--input", str(g), "--report", str(report), "--per-face", "--refine"]) == 0
    data = json.loads(report.read_text())
    assert data["verdict"] == "pass"
    assert len(data["pairing"]) == 208
    assert data["pairing"][0]["weight"]["exact"] == "1/1"
    contributions = data["info"]["contributions"]
    assert contributions["dface"]["c"]["exact"] == "-26/4389"


def test_chains_and_surgery(tmp_path, capsys):
    g = tmp_path / "g.rot"
    run(["gen", "g208", "--out", str(g)])
    assert run(["chains", str(g), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["info"]["segments"][0]["length"] == 52
    out = tmp_path / "s.rot"
    assert run(["surgery", str(g), "--chain", "0", "--out", str(out)]) == 0
    assert run(["audit", str(out)]) == 0
    assert run(["surgery", str(g), "--chain", "3", "--out", str(out)]) == 2


def test_lp(tmp_path, capsys):
    assert run(["lp", "--optimize", "--rows"]) == 0
    capsys.readouterr()
    assert run(["lp", "--optimize", "--fix", "alpha=1/2", "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    optimum = next(c for c in data["sections"]["lp"] if c["id"] == "lp.optimum")
    assert optimum["witnesses"] == ["face11 A=4 C=4 D=3"]
    w = tmp_path / "w.txt"
    w.write_text("alpha = 1/2\n")
    assert run(["lp", "--weights", str(w)]) == 1
    empty = tmp_path / "e.txt"
    empty.write_text("")
    assert run(["lp", "--scenarios", str(empty), "--optimize"]) == 0


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["gen", "prism"], ["gen", "g208", "7"], ["audit", "/nonexistent.rot"], ["lp", "--fix", "alpha"]],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_bad_rotmap_is_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.rot"
    path.write_text("rotmap 1\n0: 1 9\n1: 0\n")
    assert run(["audit", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_thread_cap(tmp_path, monkeypatch, capsys):
    g = tmp_path / "g.rot"
    run(["gen", "gN", "30", "--out", str(g)])
    monkeypatch.setenv("CURVLAB_THREADS", "1")
    assert run(["audit", str(g)]) == 0
    monkeypatch.setenv("CURVLAB_THREADS", "0")
    assert run(["audit", str(g)]) == 2
