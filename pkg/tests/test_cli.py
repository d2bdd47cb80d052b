from __future__ import annotations

import json
import subprocess
import sys

import pytest

from arcmilnor.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_lefschetz(capsys):
    assert call(capsys, "lefschetz", "--f", "x^2+y^3", "--vars", "x,y", "--n", "6")[:2] == (0, "-1")
    assert call(capsys, "lefschetz", "--f", "x^2+y^3", "--n", "6", "--d", "2")[:2] == (0, "2")


def test_verify_sec_pass(capsys):
    code, out, _ = call(capsys, "verify", "sec", "--f", "x^2+y^3", "--vars", "x,y",
                        "--n", "6", "--d", "2", "--primes", "7,13,19,31", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"


def test_verify_fail_exit_code(capsys):
    code, out, _ = call(capsys, "verify", "MT", "--f", "x*y", "--n", "3", "--primes", "3,5", "--json")
    assert code == 1 and json.loads(out)["verdict"] == "fail"


def test_resolve_preconditions(capsys):
    assert call(capsys, "resolve", "--f", "x^2+y^3+x", "--vars", "x,y")[0] == 0
    code, _, err = call(capsys, "resolve", "--f", "x+1", "--vars", "x,y")
    assert code == 2 and "NotVanishingAtOrigin" in err


@pytest.mark.parametrize("argv", [
    ["lefschetz", "--n", "2"],
    ["lefschetz", "--f", "x^2", "--n", "x"],
    ["nonsense"],
    ["count", "--f", "x^2+y^3", "--n", "2", "--q", "8"],
    ["class", "--f", "x^2+y^3", "--n", "2", "--mode", "count"],
    ["lefschetz", "--f", "x^-2", "--n", "2"],
])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_abort_exit_code(capsys):
    code, _, err = call(capsys, "count", "--f", "x^2+y^3", "--n", "6", "--q", "7", "--work-bound", "50")
    assert code == 3 and "work bound" in err
    code, _, err = call(capsys, "resolve", "--f", "(y^2-2*x^2)^2+x^5")
    assert code == 3 and "NonRationalCenter" in err


def test_resolve_json_roundtrip(capsys, tmp_path):
    path = tmp_path / "cusp.json"
    assert call(capsys, "resolve", "--f", "x^2+y^3", "--json", "--out", str(path))[0] == 0
    for cmd in (["lefschetz", "--n", "6"], ["zeta"], ["volume"], ["class", "--n", "2", "--mode", "split"]):
        a = call(capsys, *cmd, "--res", str(path), "--json")
        b = call(capsys, *cmd, "--f", "x^2+y^3", "--json")
        assert a[0] == 0 and a[1] == b[1]


@pytest.mark.parametrize("cmd,expect", [
    (["zeta", "--f", "x^2+y^3"], "(1-t^2)(1-t^3)(1-t^6)^-1"),
    (["s-invariants", "--f", "x^2+y^3"], "s_2=2 s_3=3 s_6=-6"),
    (["class", "--f", "x^2+y^3", "--n", "2", "--mode", "split"], "2*L^3"),
    (["class", "--f", "x^2+y^3", "--n", "2", "--mode", "count", "--q", "7"], "686"),
    (["count", "--f", "x^2+y^3", "--n", "2", "--q", "7"], "686"),
    (["fixed-count", "--f", "x^2+y^3", "--n", "6", "--d", "2", "--q", "7"], "686"),
    (["verify", "triv", "--N", "1,1", "--k", "1,1", "--m", "2", "--n", "2", "--q", "5"], "pass"),
])
def test_text_outputs(capsys, cmd, expect):
    code, out, _ = call(capsys, *cmd)
    assert code == 0 and expect in out


@pytest.mark.parametrize("cmd", [
    ["lefschetz", "--f", "x^3+y^3", "--n", "3"],
    ["class", "--f", "x^3+y^3", "--n", "6", "--mode", "split"],
    ["count", "--f", "x*y", "--n", "3", "--q", "5"],
    ["volume", "--f", "x^2+y^3", "--mode", "split"],
])
def test_text_and_json_agree(capsys, cmd):
    _, text, _ = call(capsys, *cmd)
    _, js, _ = call(capsys, *cmd, "--json")
    doc = json.loads(js)
    for value in doc.values():
        if not isinstance(value, (dict, list)):
            assert str(value) in text


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "arcmilnor", "lefschetz", "--f", "x^2+y^3", "--n", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "2"
