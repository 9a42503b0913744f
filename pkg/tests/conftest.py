import pytest

from kasami.field import build_tower

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def t321():
    return build_tower(3, 2, 1)


@pytest.fixture(scope="session")
def t331():
    return build_tower(3, 3, 1)


@pytest.fixture(scope="session")
def t320():
    return build_tower(3, 2, 0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
