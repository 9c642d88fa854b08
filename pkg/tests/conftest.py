import pytest

from oracles import atlas

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small_graphs():
    """All isomorphism classes of graphs on at most 6 vertices."""
    return atlas(6)


@pytest.fixture
def report_line():
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
