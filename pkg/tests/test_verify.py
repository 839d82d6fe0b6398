"""Verification harness: verdicts, determinism, exit codes, CLI."""

import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from f1closed.balls import PrecCtx
from f1closed.dsl import load_identity_table, record_from_dict
from f1closed.verify import (
    VerifyReport,
    VerifyRow,
    _record_table,
    verify_all,
    verify_identity,
    verify_table1_row,
)

CTX = PrecCtx.from_digits(50)
RECORDS = {r.id: r for r in load_identity_table()}


def test_verify_identity_pass():
    row = verify_identity(RECORDS["A''.3"], CTX)
    assert row.verdict == "pass"
    assert row.method == "series"


def test_verify_identity_conjectural():
    row = verify_identity(RECORDS["conj4"], CTX)
    assert row.verdict == "conjectural-pass"


def test_verify_identity_gauss_method():
    row = verify_identity(RECORDS["gauss-telescoping"], CTX)
    assert row.verdict == "pass" and row.method == "gauss"


def test_verify_identity_wrong_value_fails():
    raw = {
        "id": "wrong", "series": "2F1", "params": ["1/4", "1/2", "3/4"],
        "x": "80/81", "rhs": "9/5+1/10^10", "status": "proved",
    }
    row = verify_identity(record_from_dict(raw), CTX)
    assert row.verdict == "fail"


def test_verify_identity_domain_skip():
    raw = {
        "id": "nowhere", "series": "2F1", "params": ["1/4", "1/2", "3/4"],
        "x": "3/2", "rhs": "1", "status": "proved",
    }
    row = verify_identity(record_from_dict(raw), CTX)
    assert row.verdict == "domain-skipped"


def test_verify_table1_skipped_rows():
    row = verify_table1_row("D.2", CTX)
    assert row.verdict == "pass"
    assert "numeric skipped" in row.note


def test_record_table_classification():
    assert _record_table("A.1") == "sanity"  # table-1 ids never reach records
    assert _record_table("A'.1") == "2"
    assert _record_table("B''.3") == "3"
    assert _record_table("C'''.4") == "4"
    assert _record_table("B''''.2") == "5"
    assert _record_table("conj4") == "conj"
    assert _record_table("F1val") == "conj"
    assert _record_table("kummer[a=1/3,b=1/5]") == "sanity"


def test_report_determinism():
    rep1 = verify_all(CTX, table="3", pattern="A''")
    rep2 = verify_all(CTX, table="3", pattern="A''")
    assert rep1.to_json(include_timing=False) == rep2.to_json(include_timing=False)
    data = json.loads(rep1.to_json())
    assert data["schema_version"] == 1
    assert data["rows"]


def test_empty_filter_match():
    rep = verify_all(CTX, table="3", pattern="NO-SUCH-ID")
    assert rep.rows == []
    assert rep.exit_code == 0


def test_exit_code_contract():
    rep = VerifyReport(precision_digits=50)
    rep.rows.append(VerifyRow("x", "identity", "proved", "m", "", "", "", "pass"))
    assert rep.exit_code == 0
    rep.rows.append(
        VerifyRow("y", "identity", "conjectural", "m", "", "", "", "conjectural-fail")
    )
    assert rep.exit_code == 0  # conjectural failures never flip the exit code
    rep.rows.append(VerifyRow("z", "identity", "proved", "m", "", "", "", "fail"))
    assert rep.exit_code == 1


def test_verify_jobs_parallel():
    rep1 = verify_all(CTX, table="3", pattern=r"D''", jobs=2)
    rep2 = verify_all(CTX, table="3", pattern=r"D''")
    assert rep1.to_json(include_timing=False) == rep2.to_json(include_timing=False)
    assert len(rep1.rows) == 3


def _run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "f1closed.cli", *args],
        capture_output=True,
        text=True,
        timeout=560,
    )


def test_cli_eval2f1():
    r = _run_cli("eval2f1", "--a", "1/4", "--b", "1/2", "--c", "3/4",
                 "--x", "80/81", "--digits", "30")
    assert r.returncode == 0
    assert r.stdout.startswith("1.8000000000")


def test_cli_evalf1_methods():
    base = ["evalf1", "--alpha", "1/3", "--beta1", "1/5", "--beta2", "-2",
            "--gamma", "3/2", "--x", "1/7", "--y", "1/9", "--digits", "25"]
    outs = set()
    for m in ("auto", "series", "terminating", "integral"):
        r = _run_cli(*base, "--method", m)
        assert r.returncode == 0, r.stderr
        outs.add(r.stdout.split(" ")[0][:20])
    assert len(outs) == 1  # all methods agree on the leading digits


def test_cli_contig_row():
    r = _run_cli("contig", "--k", "1,2,-4,1", "--row", "A.3")
    assert r.returncode == 0
    assert "certified" in r.stdout


def test_cli_usage_error_exit_2():
    r = _run_cli("eval2f1", "--a", "1/2", "--b", "1/2", "--c", "1", "--x", "1")
    assert r.returncode == 2
    r = _run_cli("contig", "--k", "1,2")
    assert r.returncode == 2


def test_cli_verify_json(tmp_path):
    r = _run_cli("verify", "--table", "3", "--filter", "B''\\.3",
                 "--digits", "40", "--format", "json")
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["summary"]["pass"] == 1
