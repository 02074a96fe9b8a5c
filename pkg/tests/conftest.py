"""Shared fixtures and the acceptance-criteria terminal summary."""

from __future__ import annotations

import pytest

# (criterion number) -> (description, outcome)
_ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(num, desc): marks a test as one numbered acceptance "
        "criterion; the run summary prints one PASS/FAIL line per criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        num, desc = marker.args
        _ACCEPTANCE_RESULTS[int(num)] = (str(desc), report.outcome)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE_RESULTS):
        desc, outcome = _ACCEPTANCE_RESULTS[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} — {desc}")
