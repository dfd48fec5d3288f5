import json
import subprocess
import sys

import pytest

from lamcalc.algebra import LaurentPoly
from lamcalc.cli import main, run


def cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


@pytest.mark.parametrize("argv, expected", [
    (["expand", "--a", "1", "--lambda", "2", "--n", "2"], "0:1,-1:-3/2,-2:1/2"),
    (["expand", "--n", "0"], "0:1"),
    (["dlam", "--poly", "2:1,0:3", "--lambda", "2"], "1:4,-1:3"),
    (["ilam", "--poly", "0:1", "--lambda", "2"], "1:1/2"),
    (["dlam", "--order", "0", "--poly", "1:1", "--lambda", "5"], "1:1"),
    (["taylor", "--poly", "-1:1", "--a", "2", "--lambda", "3"], "[1/2, -1/2]\nmethods_agree: true"),
    (["taylor", "--poly", "0:7", "--a", "5", "--lambda", "2", "--method", "system"], "[7]"),
    (["taylor", "--poly", "-2:1", "--a", "1", "--lambda", "2", "--method", "both"], "[1, -3, 2]\nmethods_agree: true"),
    (["connect", "--family", "monomial", "--n", "1", "--a", "2", "--lambda", "3"],
     "truth: [1/2, -1/2]\npaper: [1/2, -1/2]\nagree: [true, true]"),
    (["connect", "--family", "twopoint", "--n", "1", "--a", "2", "--b", "1", "--lambda", "3"],
     "truth: [1/2, 1/2]\npaper: [1/2, -1/2]\nagree: [true, false]"),
    (["connect", "--family", "sw", "--n", "0", "--a", "1", "--lambda", "1/2"],
     "truth: [1]\npaper: [1]\nagree: [true]"),
])
def test_worked_examples(capsys, argv, expected):
    code, out, _ = cli(capsys, *argv)
    assert code == 0 and out == expected


@pytest.mark.parametrize("argv", [
    ["expand", "--lambda", "0", "--n", "2"],
    ["dlam", "--poly", "1:x", "--lambda", "2"],
    ["taylor", "--poly", "1:1", "--a", "1", "--lambda", "2"],
    ["taylor", "--poly", "-1:1", "--a", "0", "--lambda", "2"],
    ["taylor", "--poly", "-1:1", "--a", "1", "--lambda", "-1"],
    ["connect", "--family", "twopoint", "--n", "1", "--a", "2", "--lambda", "3"],
    ["verify", "--suite", "nope"],
    ["eval", "--expr", "eq", "--z", "2", "--q", "1/2"],
    ["frobnicate"],
])
def test_errors_exit_one(capsys, argv):
    code, _, err = cli(capsys, *argv)
    assert code == 1 and err.startswith("error:")
    assert run(argv).status == "error" and run(argv).message


def test_eval_examples(capsys):
    code, out, _ = cli(capsys, "eval", "--expr", "binomial", "--alpha", "0", "--a", "1", "--lambda", "2", "--x", "3")
    assert code == 0 and out == "1." + "0" * 49
    code, out, _ = cli(capsys, "eval", "--expr", "eq", "--z", "0.5", "--q", "0", "--prec", "30")
    assert out == "2." + "0" * 29
    import mpmath
    code, out, _ = cli(capsys, "eval", "--expr", "solE", "--a", "1", "--lambda", "2", "--x", "3", "--prec", "50")
    with mpmath.workdps(60):
        f = lambda x: mpmath.qp(1 / mpmath.mpf(x), mpmath.mpf(1) / 2)
        value = mpmath.mpf(out)
        assert abs(value - f(3)) < 1e-29  # truncation stops at tol = 1e-30
        assert abs(3 * f(6) - 3 * value - f(6)) < 1e-25


def test_prec_env_override(capsys, monkeypatch):
    monkeypatch.setenv("LAMCALC_PREC", "20")
    _, out, _ = cli(capsys, "eval", "--expr", "Eq", "--z", "1/2", "--q", "1/3")
    assert len(out.replace(".", "")) == 20


def test_json_mode(capsys):
    code, out, _ = cli(capsys, "--json", "expand", "--a", "1", "--lambda", "2", "--n", "2")
    doc = json.loads(out)
    assert doc["status"] == "ok" and doc["message"] == ""
    assert doc["payload"]["poly"] == {"0": "1", "-1": "-3/2", "-2": "1/2"}
    code, out, _ = cli(capsys, "expand", "--lambda", "0", "--n", "1", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "error" and doc["message"]


def test_printed_polys_reparse(capsys):
    for argv in (["expand", "--a", "-3/4", "--lambda", "5/2", "--n", "4"],
                 ["dlam", "--poly", "3:1/2,-2:7,0:1", "--lambda", "-2/3", "--order", "3"],
                 ["ilam", "--poly", "-1:1,5:-4", "--lambda", "7", "--order", "2"]):
        _, out, _ = cli(capsys, *argv)
        assert str(LaurentPoly.parse(out)) == out


def test_verify_small_and_empty(capsys):
    code, out, _ = cli(capsys, "verify", "--suite", "ops", "--trials", "50", "--seed", "1")
    assert code == 0 and out.endswith("verification: ok") and "FAIL" not in out
    code, out, _ = cli(capsys, "verify", "--suite", "all", "--trials", "0")
    assert code == 0 and out == "verification: ok"
    code, out, _ = cli(capsys, "verify", "--suite", "taylor", "--trials", "5")
    assert out.count("discrepancy:") == 2


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "lamcalc.cli", "--json", "verify", "--suite", "binom", "--trials", "20", "--seed", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["payload"]["ok"]
