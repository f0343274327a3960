import pytest

from mvseq.acceptance import data_path
from mvseq.core import load_logic
from mvseq.pools import random_signature


@pytest.fixture(scope="session")
def godel():
    return load_logic(data_path("godel3.json"))


@pytest.fixture(scope="session")
def classical():
    return load_logic(data_path("classical2.json"))


@pytest.fixture(scope="session")
def belnap():
    return load_logic(data_path("belnap4.json"))


@pytest.fixture(scope="session")
def random4():
    return random_signature(11)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
