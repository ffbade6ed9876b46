import json
import subprocess
import sys
from pathlib import Path

import pytest

from qcanext.cli import main

DATA = str(Path(__file__).parent / "data") + "/"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("argv, code", [
    (["check", "--quantale", "bool2"], 0),
    (["check", "--quantale", "lawvere:10", "--oracle"], 0),
    (["check", "--quantale", "language:ab:2"], 0),
    (["check", DATA + "lawvere_space.json"], 0),
    (["check", DATA + "relation.json"], 0),
    (["check", DATA + "language.json"], 0),
    (["check", DATA + "broken_space.json"], 1),
    (["check", DATA + "malformed.json"], 2),
    (["check", DATA + "unknown_field.json"], 2),
    (["check", DATA + "missing.json"], 2),
    (["check"], 2),
    (["check", "--quantale", "tropical"], 2),
    (["concepts", DATA + "lawvere_context.json", "--budget", "3"], 3),
    (["canext", DATA + "diamond.json"], 0),
    (["automata", DATA + "automaton.json", "--oracle"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_broken_space_names_the_witness(capsys):
    code, report = run_json(capsys, "check", DATA + "broken_space.json")
    assert code == 1
    assert report["violation"]["axiom"] == "transitivity"
    assert report["violation"]["witness"] == ["x", "y", "z"]


def test_concepts_with_oracle(capsys):
    for name, count in (("antichain_context", 4), ("chain_context", 2),
                        ("lawvere_context", 20), ("language_context", 6),
                        ("empty_attributes", 1)):
        code, report = run_json(capsys, "concepts", DATA + name + ".json", "--oracle")
        assert code == 0 and report["count"] == count
        assert report["oracle"] == {"count": count, "agrees": True}


@pytest.mark.parametrize("name, nodes, edges", [
    ("antichain_context", 4, 4), ("chain_context", 2, 1),
])
def test_dot_export(capsys, tmp_path, name, nodes, edges):
    target = tmp_path / "out.dot"
    assert run(capsys, "concepts", DATA + name + ".json", "--dot", str(target))[0] == 0
    text = target.read_text()
    assert text.count("[label=") == nodes
    assert text.count("->") == edges


def test_canext_reports(capsys):
    code, report = run_json(capsys, "canext", DATA + "diamond.json")
    assert (report["filters"], report["ideals"], report["concepts"]) == (4, 4, 4)
    assert report["compactness"] == {"ok": True}
    assert report["preservationFailures"] == []
    code, report = run_json(capsys, "canext", DATA + "diamond.json",
                            "--filters", "all", "--ideals", "all")
    assert code == 0 and report["concepts"] == 8
    assert "meet(a,b)" in report["preservationFailures"]
    code, report = run_json(capsys, "canext", DATA + "point_all.json")
    assert report["concepts"] == 3


def test_canext_budget_suggests_representables(capsys):
    code, report = run_json(capsys, "canext", DATA + "similarity3.json",
                            "--filters", "all", "--budget", "5")
    assert code == 3 and "representables" in report["error"]


def test_extend_succeeds(capsys):
    code, report = run_json(capsys, "extend", "--functor", DATA + "project_diamond.json",
                            "--source", DATA + "diamond.json", "--target", DATA + "chain2.json",
                            "--check", "all")
    assert code == 0 and report["ok"]
    assert report["lifts"]["l"]["adjunction"] and report["lifts"]["r"]["adjunction"]
    assert report["commutation"] == {"pi": [], "sigma": []}


def test_extend_refuses_the_collapse(capsys):
    code, report = run_json(capsys, "extend", "--functor", DATA + "collapse_diamond.json",
                            "--source", DATA + "diamond.json",
                            "--target", DATA + "chain3_finlim.json")
    assert code == 4
    assert report["lifts"]["l"] == {"refused": True, "violator": "f1",
                                    "vector": [False, True, True]}
    assert "f1" in report["error"]


def test_automata_report(capsys):
    code, report = run_json(capsys, "automata", DATA + "automaton.json", "--oracle")
    assert report["observability"]["p"] == ["ab", "aba"]
    assert report["oracle"] == {"agrees": True}


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    assert main(["canext", DATA + "chain2.json", "--json", "-o", str(target)]) == 0
    assert json.loads(target.read_text())["command"] == "canext"


def test_text_rendering(capsys):
    code, out = run(capsys, "check", "--quantale", "similarity:3")
    assert "formatVersion: 1" in out and "command: check" in out


def _subprocess(*argv):
    return subprocess.run([sys.executable, "-m", "qcanext", *argv], capture_output=True,
                          text=True, check=False)


def test_module_entry_point_is_deterministic():
    argv = ("concepts", DATA + "lawvere_context.json", "--json")
    first, second = _subprocess(*argv), _subprocess(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout
