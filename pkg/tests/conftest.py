import itertools

import pytest

from gnpmod.graph import Graph, sample_gnp


@pytest.fixture
def k2():
    return Graph(2, [(1, 2)])


@pytest.fixture
def k3():
    return Graph(3, [(1, 2), (1, 3), (2, 3)])


@pytest.fixture
def k4():
    return Graph(4, list(itertools.combinations(range(1, 5), 2)))


@pytest.fixture
def path4():
    return Graph(4, [(1, 2), (2, 3), (3, 4)])


@pytest.fixture
def two_edges():
    return Graph(4, [(1, 2), (3, 4)])


@pytest.fixture
def cycle6():
    return Graph(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)])


# Verdict lines from the acceptance suite; printed after the test
# summary so they survive output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance scoreboard")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def connected_gnp(n: int, p: float, seed: int) -> Graph:
    """First connected G(n,p) sample at seed, seed+1000, seed+2000, ..."""
    from gnpmod.graph import connected_components
    for off in itertools.count(0, 1000):
        G = sample_gnp(n, p, seed + off)
        if len(connected_components(G)) == 1:
            return G
    raise AssertionError("unreachable")
