import dataclasses
import json
from fractions import Fraction

import pytest

from qracah.checks import run_all, select_checks
from qracah.fields import QQ, PrimeField
from qracah.params import sample_params, validate_params
from qracah.report import CheckResult, VerificationReport, emit_report, parse_report
from qracah.triple import build_triple


def test_json_schema(generic2):
    data = json.loads(emit_report(run_all(generic2), "json"))
    assert list(data) == ["params", "checks", "summary"]
    assert data["params"] == {"q": "2", "a": "3", "b": "5", "c": "7", "d": 2, "field": "rational", "basis": "first"}
    assert set(data["checks"][0]) == {"id", "paper_ref", "status", "detail"}
    assert data["summary"]["fail"] == 0


def test_rational_literal_serialization():
    p = validate_params(QQ(Fraction(3, 2)), QQ(3), QQ(5), QQ(7), 1)
    data = json.loads(emit_report(run_all(build_triple(p), select_checks("eig.*")), "json"))
    assert data["params"]["q"] == "3/2"


def test_roundtrip(generic2):
    report = run_all(generic2)
    assert parse_report(emit_report(report, "json")) == report


def test_roundtrip_prime_with_failures():
    r = build_triple(sample_params(PrimeField(1000003), 3, 2))
    bad = run_all(dataclasses.replace(r, B=r.B.with_entry(0, 0, r.B[0, 0] + 1)))
    assert bad.summary["fail"] > 0
    assert parse_report(emit_report(bad)) == bad
    assert json.loads(emit_report(bad))["params"]["field"] == "fp:1000003"


def test_text_table(generic2):
    text = emit_report(run_all(generic2), "text")
    lines = text.splitlines()
    assert lines[0].startswith("field=rational basis=first")
    assert lines[-1] == "pass=96 fail=0 skipped=2"
    widths = {line.index(" pass") for line in lines[3:-1] if " pass" in line}
    assert len(widths) == 1


def test_summary_must_match():
    res = (CheckResult("x", "ref", "pass"),)
    with pytest.raises(ValueError):
        VerificationReport({}, res, {"pass": 0, "fail": 0, "skipped": 0})
    with pytest.raises(ValueError):
        CheckResult("x", "ref", "fail", "")
    with pytest.raises(ValueError):
        CheckResult("x", "ref", "maybe")
    with pytest.raises(ValueError):
        emit_report(VerificationReport({}, res), "yaml")
