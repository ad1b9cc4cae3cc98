"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

import pytest

from abelcovers.cover import validate

_CRITERIA: dict = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    if call.when == "call" or failed:
        prev = _CRITERIA.get(n, True)
        _CRITERIA[n] = prev and not failed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")


# Reference families: G = Z/2 x Z/4, (Z/2)^2 and (Z/4)^2.

Z2Z4_ROWS = [[2, 2, 2, 2, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]]
KLEIN_ROWS = [[1, 1, 1, 1, 0, 0, 0, 0], [1, 1, 1, 1, 1, 1, 1, 1]]
Z4Z4_ROWS = [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1, 1]]


@pytest.fixture
def z2z4_cover():
    return validate(4, Z2Z4_ROWS)


@pytest.fixture
def klein_cover():
    return validate(2, KLEIN_ROWS)


@pytest.fixture
def z4z4_cover():
    return validate(4, Z4Z4_ROWS)
