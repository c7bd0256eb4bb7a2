import pytest

from oracles import sieve_flags


@pytest.fixture(scope="session")
def flags_2_20():
    return sieve_flags(2**20)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
