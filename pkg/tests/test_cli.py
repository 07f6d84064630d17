import json
import subprocess
import sys

import pytest

from qbailey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_theorem_json(capsys):
    code, out = run(capsys, "verify", "theorem", "--id", "1", "--order", "40", "--oracle", "20",
                    "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 4 and all(r["status"] == "pass" for r in rows)
    assert rows[0]["trunc_t_units"] == 80
    assert all(r["elapsed_ms"] is None for r in rows)


@pytest.mark.parametrize("argv", [
    ["verify", "theorem", "--id", "4"],
    ["verify", "theorem", "--id", "1", "--order", "0"],
    ["verify", "theorem", "--id", "1", "--order", "10", "--oracle", "11"],
    ["verify", "pair", "--name", "sym", "--b", "1"],
    ["verify", "pair", "--name", "u-closed", "--b", "q^3"],
    ["verify", "pair", "--name", "nope"],
    ["verify", "fine", "--b", "1", "--t", "q"],
    ["verify", "fine", "--b", "q", "--t", "-1"],
    ["verify", "fine", "--b", "q^ 1", "--t", "q"],
    ["enumerate", "--family", "X", "--n", "3"],
])
def test_usage_errors_exit_2_silently(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


def test_mismatch_exits_1(capsys):
    code, out = run(capsys, "verify", "theorem", "--id", "3", "--order", "10", "--as-printed")
    assert code == 1
    first = json.loads(out.splitlines()[0])
    assert first["status"] == "fail"
    assert first["first_mismatch"] == {"t_units": 2, "lhs": 2, "rhs": 3}


@pytest.mark.parametrize("argv", [
    ["verify", "pair", "--name", "e1", "--n-max", "8", "--order", "30"],
    ["verify", "pair", "--name", "star", "--n-max", "5", "--order", "30"],
    ["verify", "pair", "--name", "sym", "--b", "-q^1/2", "--n-max", "5", "--order", "30"],
    ["verify", "pair", "--name", "squared", "--n-max", "5", "--order", "30"],
    ["verify", "pair", "--name", "u-closed", "--b", "q^1/2", "--n-max", "5", "--order", "30"],
    ["verify", "pair", "--name", "u-chain", "--n-max", "5", "--order", "30"],
    ["verify", "fine", "--b", "q^1/2", "--t", "q", "--order", "30"],
    ["verify", "fine", "--b", "-q", "--t", "q^2", "--order", "30"],
])
def test_passing_commands(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    assert all(json.loads(line)["status"] == "pass" for line in out.splitlines())


def test_u_chain_reports_three_checks(capsys):
    _, out = run(capsys, "verify", "pair", "--name", "u-chain", "--n-max", "3", "--order", "20")
    checks = [json.loads(line)["check"] for line in out.splitlines()]
    assert checks == ["relation", "beta-termwise", "alpha-termwise"]


def test_enumerate_tsv(capsys):
    code, out = run(capsys, "enumerate", "--family", "P", "--n", "10")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "n\tcount"
    assert lines[1] == "0\t1" and lines[2] == "1\t0"
    assert len(lines) == 12


def test_enumerate_json(capsys):
    _, out = run(capsys, "enumerate", "--family", "Q", "--n", "2", "--format", "json")
    assert json.loads(out) == {"family": "Q", "n_max": 2, "counts": [1, 1, 2]}
    _, out = run(capsys, "enumerate", "--family", "R", "--n", "1", "--format", "json")
    assert json.loads(out)["counts"][1] == 2


def test_tsv_dump(capsys):
    code, out = run(capsys, "verify", "theorem", "--id", "2", "--order", "5", "--format", "tsv", "--dump")
    assert code == 0
    head, dump = out.split("\n\n")
    assert head.splitlines()[0].startswith("identity\tsides\tstatus")
    rows = dump.splitlines()
    assert rows[0] == "exponent\tlhs\trhs"
    assert rows[1:4] == ["0\t1\t1", "1/2\t0\t0", "1\t1\t1"]
    assert len(rows) == 1 + 11


def test_timing_flag(capsys):
    _, out = run(capsys, "verify", "fine", "--b", "q", "--t", "q", "--order", "10", "--timing")
    assert isinstance(json.loads(out)["elapsed_ms"], int)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qbailey", "enumerate", "--family", "R", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[2] == "1\t2"
