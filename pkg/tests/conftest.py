import numpy as np
import pytest

from cyclecount import example_graph, from_dict


@pytest.fixture(scope="session")
def fig4():
    return example_graph("fig4")


@pytest.fixture(scope="session")
def two_vertex():
    return example_graph("two_vertex")


@pytest.fixture(scope="session")
def triangle():
    return example_graph("triangle")


@pytest.fixture(scope="session")
def two_set():
    return example_graph("two_set")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def cycle_doc(lengths):
    n = len(lengths)
    return {
        "vertices": n,
        "edges": [
            {"from": i + 1, "to": (i + 1) % n + 1, "length": {"sqrt": k}}
            for i, k in enumerate(lengths)
        ],
    }


@pytest.fixture
def make_cycle():
    return lambda lengths: from_dict(cycle_doc(lengths))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
