import pytest

from covgen.search import SearchConfig, run_search


@pytest.fixture(scope="session")
def paper12():
    """The d = 8 system through degree 12, built from the named recipes."""
    return run_search(8, 12, "paper")


@pytest.fixture(scope="session")
def paper6():
    return run_search(8, 6, "paper")


@pytest.fixture(scope="session")
def generic7():
    return run_search(8, 7, "generic", SearchConfig())


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_criterion():
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(number: int, label: str, ok: bool, detail: str = ""):
        line = f"criterion {number} [{label}]: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
