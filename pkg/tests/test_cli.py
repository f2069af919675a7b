import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gextreme.cli import fmt, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_rate():
    assert call("rate", "[1,2],{5}") == (0, "1.25\n", "")
    assert call("rate", "{5}")[1] == "inf\n"
    code, out, _ = call("rate", "(0.5,1),(3,4]", "--format", "json")
    assert json.loads(out) == {"set": "(0.5,1),(3,4]", "rate": 0.5625}


def test_tail():
    code, out, _ = call("tail", "1000000", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["log10_ldp"] == "-18"
    assert rows[0]["log10_gumbel"] == "-12"
    assert float(rows[0]["log10_exact"]) == pytest.approx(-17.21695809, abs=1e-8)


def test_tail_scientific_n():
    assert call("tail", "1e6", "2")[1] == call("tail", "1000000", "2")[1]


def test_prob_set():
    code, out, _ = call("prob-set", "1000000", "[1,2],{5}", "--format", "json")
    d = json.loads(out)
    assert d["rate"] == 1.25
    assert d["log10_ldp"] == pytest.approx(-1.25 * 6, abs=1e-9)
    code, out, _ = call("prob-set", "1000000", "{5}")
    assert out.splitlines() == ["log10_exact,log10_ldp,rate", "-inf,-inf,inf"]


def test_compare():
    code, out, _ = call("compare", "1000000", "--grid", "0:5:0.05")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "x,log10_exact,log10_gumbel,log10_ldp"
    assert len(lines) == 102
    assert all(math.isfinite(float(line.split(",")[1])) for line in lines[1:])
    assert lines[1].startswith("0,")
    assert lines[-1].split(",")[0] == "5"


def test_compare_json_matches_csv():
    _, c, _ = call("compare", "10000", "--grid", "0:2:0.5")
    _, j, _ = call("compare", "10000", "--grid", "0:2:0.5", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(c)))
    objs = json.loads(j)
    for row, obj in zip(rows, objs):
        for k, v in row.items():
            assert float(v) == obj[k]


def test_simulate():
    code, out, _ = call("simulate", "1000000", "0.2", "100000", "42", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["samples"] == 100000 and d["seed"] == 42
    assert d["log10_ci_lo"] <= d["log10_p_hat"] <= d["log10_ci_hi"]
    assert d["rng"].startswith("philox")


def test_simulate_csv_zero_hits():
    _, out, _ = call("simulate", "100", "40", "1000", "1")
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert row["hits"] == "0" and row["log10_p_hat"] == "-inf"


def test_diagnose():
    code, out, _ = call("diagnose")
    reports = json.loads(out)
    assert code == 0
    labels = [r["label"] for r in reports]
    assert "bn_limit" in labels and "tail_rate_error(x=1)" in labels
    code, out, _ = call("diagnose", "--format", "csv", "--ladder", "1000,1000000")
    assert out.splitlines()[0] == "label,n,value"


@pytest.mark.parametrize(
    "argv",
    [
        ("rate", "[1,2"),
        ("rate", "[-1,2]"),
        ("tail", "1", "2"),
        ("tail", "1000", "-1"),
        ("tail", "abc", "2"),
        ("compare", "100", "--grid", "3:1:0.1"),
        ("compare", "100", "--grid", "0:1"),
        ("simulate", "100", "0.1", "0", "1"),
        ("simulate", "100", "0.1", "10", "-1"),
        ("bogus",),
        (),
    ],
)
def test_input_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert out == ""
    assert err.count("\n") == 1 and err.startswith("gextreme: error:")


def test_fmt():
    assert fmt(-math.inf) == "-inf"
    assert fmt(math.inf) == "inf"
    assert fmt(-18.000000000000004) == "-18"
    assert fmt(1 / 3) == "0.3333333333"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gextreme", "rate", "[1,2],{5}"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "1.25\n"


def test_threads_env_cap(monkeypatch):
    base = call("simulate", "10000", "0.3", "70000", "5", "--threads", "1")[1]
    monkeypatch.setenv("GEXTREME_THREADS", "8")
    assert call("simulate", "10000", "0.3", "70000", "5", "--threads", "8")[1] == base
