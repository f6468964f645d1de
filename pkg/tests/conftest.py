from itertools import chain, permutations

import pytest

from subcount.graphs import SmallGraph, enumerate_graphs

ACCEPTANCE_LINES: list[str] = []


def brute_canon(g: SmallGraph) -> tuple:
    """Isomorphism-class key by trying every relabeling; no refinement."""
    best = None
    for perm in permutations(range(g.n)):
        pos = {v: i for i, v in enumerate(perm)}
        edges = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges()))
        if best is None or edges < best:
            best = edges
    return (g.n, best)


@pytest.fixture(scope="session")
def hosts_upto6():
    return list(chain.from_iterable(enumerate_graphs(n) for n in range(0, 7)))


@pytest.fixture(scope="session")
def hosts_upto5():
    return list(chain.from_iterable(enumerate_graphs(n) for n in range(0, 6)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
