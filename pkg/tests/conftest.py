"""Shared fixtures and the acceptance summary printed at the end of the run."""

from __future__ import annotations

import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _MARKERS.get(report.nodeid)
    if marker is None:
        return
    num, text = marker
    entry = _CRITERIA.setdefault(num, {"text": text, "ok": True, "secs": 0.0})
    entry["ok"] &= report.outcome == "passed"
    entry["secs"] += report.duration


_MARKERS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKERS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {status} ({e['secs']:.2f}s): {e['text']}")


@pytest.fixture
def e7():
    from cubicpierce import PrimeField, WeierstrassCurve

    return WeierstrassCurve(0, 1, PrimeField(7))
