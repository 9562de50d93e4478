import json
import subprocess
import sys

import pytest

from expunify.cli import main
from expunify.rewrite import verify_unifier
from expunify.terms import parse_term

from corpus import SOLVABLE, parse_problem


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def problem(tmp_path):
    def write(text):
        p = tmp_path / "p.txt"
        p.write_text(text)
        return str(p)
    return write


def test_solve_unifiable(capsys, problem):
    code, out, _ = run(capsys, "solve", problem("exp(g(A),B) =? g(C)\n"))
    assert code == 0
    assert out.splitlines()[:2] == ["unifiable", "  C ↦ A @ B"]


def test_solve_self_loop(capsys, problem):
    code, out, _ = run(capsys, "solve", problem("# needs an infinite unifier\nU =? exp(X,W)\n\nU =? X * Y\n"))
    assert code == 1
    assert out.splitlines() == ["fail P_CYCLE", "  {U,X}"]


def test_solve_json_fail(capsys, problem):
    code, out, _ = run(capsys, "solve", "--json", problem("g(V) =? X * Y"))
    rec = json.loads(out)
    assert code == 1 and rec["status"] == "fail" and rec["reason"] == "F3"
    assert set(rec["stats"]) == {"iterations", "rule_counts", "peak_equations", "wall_time"}


def test_parse_error_exit_code(capsys, problem):
    code, _, err = run(capsys, "solve", problem("X =? f(Y)\n"))
    assert code == 2 and "p.txt:1" in err
    code, out, _ = run(capsys, "solve", "--json", problem("X * Y @ Z =? A\n"))
    assert code == 2 and json.loads(out)["status"] == "error"
    assert run(capsys, "solve", problem("# nothing\n"))[0] == 2
    assert run(capsys, "solve", problem("inv(X) =? Y\n"))[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "solve", "/nonexistent/file")[0] == 2


@pytest.mark.parametrize("text", SOLVABLE)
def test_json_roundtrip(capsys, problem, text):
    code, out, _ = run(capsys, "solve", "--json", "--verify", problem(text.replace(";", "\n")))
    rec = json.loads(out)
    assert code == 0 and rec["verified"] is True
    unifier = {v: parse_term(t, allow_fresh=True) for v, t in rec["unifier"].items()}
    assert verify_unifier(unifier, parse_problem(text))


def test_trace_and_dot(capsys, problem, tmp_path):
    d, p = tmp_path / "d.dot", tmp_path / "p.dot"
    code, out, err = run(capsys, "solve", "--trace", "--dot-d", str(d), "--dot-p", str(p),
                         problem("exp(g(A),B) =? g(C)"))
    assert code == 0
    assert err.splitlines()[0].startswith("(f) {")
    assert d.read_text().startswith("digraph D {")
    assert p.read_text().startswith("digraph P {")


def test_fuel_flag(capsys, problem):
    code, _, err = run(capsys, "solve", "--fuel", "0", problem("exp(X,W) =? g(A)"))
    assert code == 2 and "internal error" in err


def test_e1_normalize(capsys):
    code, out, _ = run(capsys, "e1", "normalize", "exp(inv(g(b)), c)")
    assert code == 0 and out.strip() == "inv(g(b @ c))"


def test_e1_check(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("X := g(1)\nY := b\nX * g(Y) =? exp(X, b) * g(1)\n")
    code, out, _ = run(capsys, "e1", "check", str(f))
    assert code == 0 and out.splitlines()[-1] == "all equations hold"
    f.write_text("X := g(1)\nY := c\nX * g(Y) =? exp(X, b) * g(1)\n")
    assert run(capsys, "e1", "check", str(f))[0] == 1


def test_e1_gadget(capsys):
    code, out, _ = run(capsys, "e1", "gadget", "mult", "2", "3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["verified"] and rec["witness"]["Z2"] == "c @ c @ c @ c @ c @ c"
    assert len(rec["equations"]) == 5
    code, out, _ = run(capsys, "e1", "gadget", "add", "2", "3")
    assert code == 0 and out.splitlines()[-1] == "verified: true"
    assert run(capsys, "e1", "gadget", "mult", "0", "3")[0] == 2


def test_fuzz(capsys):
    code, out, _ = run(capsys, "fuzz", "--count", "200", "--seed", "1", "--verify")
    assert code == 0
    assert "200 problems" in out and "unverified unifiers: 0" in out


def test_module_entry_point(problem):
    res = subprocess.run([sys.executable, "-m", "expunify", "solve", problem("X =? g(X)")],
                         capture_output=True, text=True)
    assert res.returncode == 1 and res.stdout.startswith("fail D_CYCLE")
