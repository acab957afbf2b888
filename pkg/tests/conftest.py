from pathlib import Path

import pytest

from domlab import finite

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture(scope="session")
def s3():
    return finite.load_table(FIXTURES / "s3.txt")


@pytest.fixture(scope="session")
def d4():
    return finite.load_table(FIXTURES / "d4.txt")


@pytest.fixture(scope="session")
def q8():
    return finite.load_table(FIXTURES / "q8.txt")


from hypothesis import settings  # noqa: E402

settings.register_profile("domlab", deadline=None, derandomize=True)
settings.load_profile("domlab")


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, text, ok)`` then assert."""

    def record(number, text, ok):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
        print(ACCEPTANCE_LINES[-1])
        assert ok, text

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
