import pytest

from artin_polyfree.words import ArtinGraph, dihedral_graph, triangle_graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tri444():
    return triangle_graph(4, 4, 4)


@pytest.fixture(scope="session")
def a4():
    return dihedral_graph(4)


@pytest.fixture(scope="session")
def a6():
    return dihedral_graph(6)


@pytest.fixture(scope="session")
def path_ab_br():
    return ArtinGraph.from_edges(["a", "b", "r"], [("a", "b", 4), ("b", "r", 4)])
