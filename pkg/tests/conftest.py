import pytest

from stsrank.onefact import enumerate_factorizations, load_representatives


@pytest.fixture(scope="session")
def reps():
    return load_representatives()


@pytest.fixture(scope="session")
def all_factorizations():
    return enumerate_factorizations()


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
