import csv
import io
import json
import os

import pytest

from qbent import acceptance
from qbent.boolfun import TraceRepr, TraceTerm, truth_table, write_tt
from qbent.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, run
from qbent.field import MODULI_ENV, first_noncube, make_field, noncubes
from qbent.linpoly import build_p1


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(MODULI_ENV, raising=False)


def test_enumerate_new_n8():
    code, text = call("--format", "json", "enumerate", "--family", "new", "--n", "8", "--a", "first")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == EXIT_OK
    assert len(rows) == 4
    assert all(r["verified"] and r["predicted"] and r["rank"] == 8 for r in rows)
    assert {tuple(r["params"]["I"]) for r in rows} == {(), (1,), (3,), (1, 3)}


def test_verify_li_not_bent():
    code, text = call("verify", "--family", "li", "--n", "6", "--k", "2", "--t", "1")
    assert code == EXIT_OK
    assert "predicted=False" in text and "verified=False" in text


def test_perm_check_P():
    F = make_field(4)
    for a in noncubes(F):
        code, text = call("--format", "json", "perm-check", "--n", "4", "--P", "--a", a.hex())
        row = json.loads(text)
        assert code == EXIT_OK
        assert row["gcrd"] and row["dickson"] and row["bruteforce"] and row["agree"]


def test_perm_check_coeffs():
    # x^2 + x has kernel {0, 1}
    code, text = call("--format", "json", "perm-check", "--n", "4", "--coeffs", "1,1,0,0")
    row = json.loads(text)
    assert code == EXIT_OK
    assert row["agree"] and not row["gcrd"]


def test_perm_check_cube_rejected():
    code, _ = call("perm-check", "--n", "4", "--P", "--a", "1")
    assert code == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["construct", "--family", "ma"],
    ["construct", "--family", "ma", "--n", "5"],
    ["construct", "--family", "ma", "--n", "6", "--c", "2"],
    ["construct", "--family", "new", "--n", "8", "--a", "zz"],
    ["construct", "--family", "hu", "--n", "8"],
    ["enumerate", "--family", "new", "--n", "8", "--a", "sample:0"],
    ["--jobs", "0", "enumerate", "--family", "ma", "--n", "4"],
    ["gcrd", "--n", "4", "0", "0"],
    ["spectrum", "--tt", "/nonexistent/file"],
])
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_mismatch_exit_code():
    # the strict x^n + 1 reading of the Hu criterion rejects bent functions at n = 12
    code, text = call("--format", "json", "enumerate", "--family", "hu", "--n", "12", "--strict")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == EXIT_MISMATCH
    assert any(r["predicted"] != r["verified"] for r in rows)
    code, _ = call("enumerate", "--family", "hu", "--n", "12")
    assert code == EXIT_OK


def test_construct_formats():
    code, text = call("construct", "--family", "ma", "--n", "4", "--c", "0")
    assert code == EXIT_OK
    assert "Tr_1^2(x^5)" in text and "predicted=True" in text
    code, text = call("--format", "json", "construct", "--family", "new", "--n", "6", "--I", "1")
    row = json.loads(text)
    assert row["terms"] and row["predicted"] is True
    code, text = call("construct", "--family", "hu", "--n", "8", "--e", "2", "--c", "01", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["family"] == "hu" and rows[0]["predicted"] == "True"


def test_enumerate_csv_and_sample():
    code, text = call("enumerate", "--family", "new", "--n", "6", "--a", "sample:3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == EXIT_OK
    assert len(rows) == 3 * 2
    assert all(r["verified"] == "True" for r in rows)


def test_enumerate_deterministic_and_parallel():
    argv = ["enumerate", "--family", "new", "--n", "8", "--a", "sample:4"]
    a = call(*argv)
    b = call(*argv)
    c = call("--jobs", "2", "--sorted", *argv)
    assert a == b == c
    unsorted = call("--jobs", "2", *argv)
    assert unsorted[0] == EXIT_OK
    assert sorted(unsorted[1].splitlines()) == sorted(a[1].splitlines())
    other = call("--seed", "7", *argv)
    assert other[0] == EXIT_OK


def test_gcrd_command():
    F = make_field(4)
    p1 = build_p1(F, first_noncube(F))
    f = ",".join(c.hex() for c in p1.coeffs)
    code, text = call("gcrd", "--n", "4", f, "1,0,0,0,1")
    assert code == EXIT_OK and text.strip() == "1"
    code, text = call("--format", "json", "gcrd", "--n", "4", "0,1,1", "1,0,1")
    d = json.loads(text)
    assert d["n"] == 4 and d["coeffs"][-1] == "1"


def test_spectrum_command(tmp_path):
    F = make_field(4)
    f = truth_table(TraceRepr(F, [TraceTerm(2, F.one, 5)]))
    path = tmp_path / "f.tt"
    with open(path, "w") as fh:
        write_tt(f, fh)
    code, text = call("spectrum", "--tt", str(path))
    lines = text.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "a_hex,value"
    assert len(lines) == 17
    assert {abs(int(line.split(",")[1])) for line in lines[1:]} == {4}


def test_moduli_override(tmp_path):
    path = tmp_path / "moduli.txt"
    path.write_text("# x^4 + x^3 + 1\n4,19\n")
    code, default = call("verify", "--family", "new", "--n", "4", "--a", "2", "--I", "1")
    assert code == EXIT_OK
    code, other = call("--moduli", str(path), "verify", "--family", "new", "--n", "4", "--a", "2", "--I", "1")
    assert code == EXIT_OK
    assert "verified=True" in other
    assert default.split("digest=")[1] != other.split("digest=")[1]
    assert MODULI_ENV not in os.environ


def test_bad_moduli_file(tmp_path):
    path = tmp_path / "moduli.txt"
    path.write_text("4,11\n")  # x^4 + 1 is reducible
    code, _ = call("--moduli", str(path), "construct", "--family", "ma", "--n", "4", "--c", "0")
    assert code == EXIT_USAGE


def test_selftest_reports_each_criterion(monkeypatch):
    monkeypatch.setattr(acceptance, "CRITERIA", [acceptance.c4_ma_criterion, acceptance.c9_count])
    code, text = call("selftest")
    lines = text.splitlines()
    assert code == EXIT_OK
    assert lines[0].startswith("[PASS]  4") and lines[1].startswith("[PASS]  9")
    assert lines[-1] == "2/2 criteria passed"


def test_selftest_failure_exit(monkeypatch):
    def broken():
        raise RuntimeError("boom")

    monkeypatch.setattr(acceptance, "CRITERIA", [broken])
    code, text = call("selftest")
    assert code == EXIT_MISMATCH
    assert text.startswith("[FAIL]")
