from __future__ import annotations

import itertools

import pytest

from coinweigh.model import Assignment


def all_assignments(n: int, c: int = 3):
    return [Assignment(r, c) for r in itertools.product(range(1, c + 1), repeat=n)]


@pytest.fixture
def assignments():
    return all_assignments


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
