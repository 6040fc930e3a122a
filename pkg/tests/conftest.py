import pytest

from chromthresh.graph import Graph


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture
def c5():
    return Graph.cycle(5)


@pytest.fixture
def k4():
    return Graph.complete(4)


@pytest.fixture
def k5():
    return Graph.complete(5)


@pytest.fixture
def k33():
    return Graph.complete_multipartite([3, 3])


@pytest.fixture
def k23():
    return Graph.complete_multipartite([2, 3])


@pytest.fixture(name="petersen")
def petersen_fixture():
    return petersen()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
