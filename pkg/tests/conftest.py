import pytest

from discrimlab import catalog

ACCEPTANCE_LINES = []


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def crapo():
    return catalog.crapo()


@pytest.fixture(scope="session")
def falk():
    return catalog.falk()


@pytest.fixture(scope="session")
def tri():
    """Three lines (1,0), (0,1), (1,1) in the plane."""
    from discrimlab.arrangement import new_arrangement

    return new_arrangement(2, [[1, 0], [0, 1], [1, 1]])
