"""Shared fixtures; also prints the acceptance lines at the end of the run."""

import pytest

from gbei.graph import complete, disjoint_union, edgeless, join_product, path, star

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")

    return record


@pytest.fixture(scope="session")
def named():
    """Small graphs with independently known invariants."""
    return {
        "K2": complete(2),
        "K3": complete(3),
        "K4": complete(4),
        "P3": path(3),
        "P4": path(4),
        "K13": star(3),
        "B": join_product([complete(1), disjoint_union([complete(1), complete(2)])]),
        "K2+K2": disjoint_union([complete(2), complete(2)]),
        "E2": edgeless(2),
    }


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
