import pytest

from spinwitness.chain import ChainSpec
from spinwitness.spectra import diagonalize

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def pair_half():
    return diagonalize(ChainSpec("1/2", 2, 1.0), need_vectors=True)


@pytest.fixture(scope="session")
def pair_one():
    return diagonalize(ChainSpec("1", 2, 1.0), need_vectors=True)


@pytest.fixture(scope="session")
def ring4_half():
    return diagonalize(ChainSpec("1/2", 4, 1.0), need_vectors=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
