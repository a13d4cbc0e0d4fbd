import logging

import pytest

from spinorlab import verify
from spinorlab.exceptions import ZeroSpinor
from spinorlab.verify import run_suite, suite_checks


def test_suite_checks_depend_on_m():
    assert "two-spinor calculus" in suite_checks(2)
    assert "two-spinor calculus" not in suite_checks(3)
    assert "six-dimensional spinor calculus" in suite_checks(3)
    assert len(suite_checks(4)) == len(suite_checks(3)) - 1


def test_suite_passes_at_four_dimensions():
    report = run_suite([2])
    failed = [f"{entry.name}: {entry.detail}" for entry in report.checks if not entry.passed]
    assert report.passed, failed
    assert report.failures == 0
    assert report.total == len(suite_checks(2))


@pytest.mark.slow
def test_suite_passes_at_six_and_eight_dimensions():
    report = run_suite([3, 4], seed=11)
    assert report.passed, [entry.name for entry in report.checks if not entry.passed]


def test_failing_check_is_reported(monkeypatch, caplog):
    def broken(ctx):
        raise ZeroSpinor("nothing to check")

    monkeypatch.setattr(verify, "suite_checks", lambda m: {"always passes": lambda ctx: (True, 1.0), "broken": broken})
    with caplog.at_level(logging.WARNING, logger="spinorlab.verify"):
        report = run_suite([2, 3])
    assert not report.passed
    assert (report.failures, report.total) == (2, 4)
    assert report.checks[1].detail == "ZeroSpinor: nothing to check"
    assert "broken" in caplog.text
    assert report.to_json()["passed"] is False
