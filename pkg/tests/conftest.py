import pytest

from podles.algebra import PodlesAlgebra


@pytest.fixture(scope="session")
def std():
    return PodlesAlgebra((1, 0))


@pytest.fixture(scope="session", params=[(1, 0), (1, 1), (2, 1)], ids=lambda p: f"c{p[0]}d{p[1]}")
def alg(request):
    return PodlesAlgebra(request.param)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
