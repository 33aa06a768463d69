"""Acceptance suite: runs every advertised criterion at its stated tolerance
and prints one pass/fail line per criterion (visible with pytest -s)."""

import json

import pytest

from georadon.report import ALL_CHECKS, results_to_json


@pytest.mark.parametrize("check", ALL_CHECKS,
                         ids=[fn.__name__ for fn in ALL_CHECKS])
def test_acceptance(check):
    result = check()
    print(result.line())
    assert result.passed, json.dumps(result.details, default=str, indent=2)


def test_report_serialization():
    from georadon.report import CheckResult
    text = results_to_json([CheckResult(1, "demo", True, {"x": 1.0})])
    payload = json.loads(text)
    assert payload["passed"] is True
    assert payload["checks"][0]["index"] == 1
