import json
from fractions import Fraction

import pytest

from qcrystal.report import CheckReport, emit


def test_empty_list():
    assert emit([]) == "[]"
    assert emit([], "text") == ""


def test_single_pass():
    out = json.loads(emit([CheckReport("qdet", {"n": 1}, "pass", witness="ok")]))
    assert out == [{"check": "qdet", "params": {"n": 1}, "status": "pass", "witness": "ok"}]


def test_fail_includes_witness():
    r = CheckReport("star", {"n": 2}, "fail", max_error=0.5, witness="u12 off by 0.5")
    assert "u12 off by 0.5" in emit([r])
    assert r.to_text().startswith("FAIL")
    assert CheckReport("x", {}, "fail").witness


def test_sorted_and_serializable():
    rs = [CheckReport("b", {"q": Fraction(1, 2)}), CheckReport("a", {"n": 2}), CheckReport("a", {"n": 1})]
    out = json.loads(emit(rs))
    assert [(o["check"], o["params"]) for o in out] == [("a", {"n": 1}), ("a", {"n": 2}), ("b", {"q": "1/2"})]


def test_max_error_only_when_numeric():
    assert "max_error" not in CheckReport("qdet").to_dict()
    assert CheckReport("star", max_error=1e-13).to_dict()["max_error"] == 1e-13


def test_bad_status_and_format():
    with pytest.raises(ValueError):
        CheckReport("x", status="maybe")
    with pytest.raises(ValueError):
        emit([], "xml")
