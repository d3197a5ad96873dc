import pytest

from rashba_landau.params import NaturalParams


@pytest.fixture
def p():
    """The working point used throughout: xi_tilde = 0.4, a_tilde = 0.3."""
    return NaturalParams.from_xi(0.4, 0.3)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
