import csv
import io
import json
import subprocess
import sys

import pytest

from gibtiles.cli import main
from gibtiles.identities import VerificationReport


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_seq_examples():
    assert run("seq", "gib", "--g0", "2", "--g1", "1", "--from", "0", "--to", "7") == (0, "2\n1\n3\n4\n7\n11\n18\n29\n")
    assert run("seq", "fib", "--from", "-4", "--to", "4")[1].split() == "-3 2 -1 1 0 1 1 2 3".split()
    assert run("seq", "f", "--from", "1", "--to", "5")[1].split() == "1 2 3 5 8".split()
    assert run("seq", "gib-swapped", "--g0", "2", "--g1", "1", "--from", "0", "--to", "3")[1].split() == ["1", "2", "3", "5"]


def test_seq_csv():
    code, text = run("seq", "lucas", "--from", "0", "--to", "2", "--csv")
    assert code == 0 and list(csv.reader(io.StringIO(text))) == [["n", "value"], ["0", "2"], ["1", "1"], ["2", "3"]]


def test_tilings_examples():
    assert run("tilings", "count", "--board", "plain", "--n", "8") == (0, "34\n")
    assert run("tilings", "count", "--board", "lucas", "--n", "10") == (0, "123\n")
    assert run("tilings", "count", "--board", "h", "--n", "4") == (0, "74\n")
    assert run("tilings", "count", "--board", "hgen", "--n", "3", "--m", "8") == (0, "65\n")
    assert run("tilings", "count", "--board", "l", "--n", "5", "--g0", "2", "--g1", "1") == (0, "45\n")


def test_tilings_enumerate_and_render():
    code, text = run("tilings", "count", "--board", "gib", "--n", "3", "--g0", "2", "--g1", "1",
                     "--enumerate", "--render")
    assert code == 0
    assert text.startswith("4\n###\n###\n")
    assert text.count("# tiling") == 3


def test_verify_examples():
    code, text = run("verify", "--id", "C13", "--printed-form")
    assert code == 1
    assert "g0=1 g1=1 p=2 m=5 lhs=7 rhs=8" in text
    assert run("verify", "--id", "F2", "--g0", "2", "--g1", "1", "--nmax", "6")[0] == 0


def test_verify_json_round_trip():
    code, text = run("verify", "--group", "AB", "--json", "--nmax", "10", "--mmax", "10")
    assert code == 0
    data = json.loads(text)
    assert [d["id"] for d in data] == ["A1", "A2", "A3", "B1", "B2"]
    for d in data:
        assert set(d) == {"id", "anchor", "points", "status", "counterexample", "errata_applied"}
        assert VerificationReport.from_dict(d).to_dict() == d


def test_verify_printed_json_has_counterexample():
    code, text = run("verify", "--id", "F4", "--printed-form", "--json")
    assert code == 1
    (d,) = json.loads(text)
    assert d["status"] == "fail" and d["counterexample"]["lhs"] == 73 and d["counterexample"]["rhs"] == 55


def test_verify_csv_rows():
    code, text = run("verify", "--id", "C4", "--csv", "--nmax", "5")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0
    assert rows[0] == ["id", "g0", "g1", "h0", "h1", "point", "lhs", "rhs", "status"]
    assert [r[5] for r in rows[1:]] == [f"n={n}" for n in range(1, 6)]
    code, text = run("verify", "--id", "C13", "--csv", "--printed-form", "--nmax", "6", "--mmax", "6")
    assert code == 1 and "fail" in text


def test_verify_determinism():
    a = run("verify", "--all", "--json", "--seed", "3", "--nmax", "8", "--mmax", "8")
    b = run("verify", "--all", "--json", "--seed", "3", "--nmax", "8", "--mmax", "8")
    assert a == b and a[0] == 0


def test_verify_extended_does_not_gate():
    code, text = run("verify", "--id", "E7", "--extended", "--nmax", "6")
    assert code == 0 and "E7" in text


def test_errata_listing():
    code, text = run("errata")
    assert code == 0
    for i in ("C13", "C14", "F4", "F5", "C11.even", "C12.j"):
        assert i in text
    code, text = run("verify", "--errata", "--json")
    assert code == 0 and {d["id"] for d in json.loads(text)} >= {"C13", "F4"}


def test_period_and_represent():
    assert run("period", "--mod", "29") == (0, "14\n")
    assert run("period", "--mod", "7", "--g0", "7", "--g1", "7") == (0, "1\n")
    code, text = run("period", "--mod", "5", "--table")
    assert code == 0 and text.splitlines()[-1] == "5,20"
    code, text = run("represent", "--t", "5", "--a-cap", "3")
    lines = text.splitlines()
    assert code == 0 and "n=4 a=1 b=1" in lines
    assert "n=1 a=* b=5 (family: every a >= 1)" in lines
    assert lines[-1] == "n=1 a=3 b=5 (family member)"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["seq", "gib"],
    ["seq", "fib", "--from", "3", "--to", "1"],
    ["tilings", "count", "--board", "plain", "--n", "0"],
    ["tilings", "count", "--board", "hgen", "--n", "3"],
    ["tilings", "count", "--board", "plain", "--n", "40", "--enumerate"],
    ["verify"],
    ["verify", "--id", "NOPE"],
    ["verify", "--id", "C1", "--printed-form"],
    ["verify", "--all", "--g0", "1"],
    ["period", "--mod", "1"],
    ["represent", "--t", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gibtiles.cli", "period", "--mod", "11"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "10\n"
