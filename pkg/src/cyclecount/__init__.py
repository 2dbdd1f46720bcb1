"""Point propagation on directed Hamiltonian metric graphs.

Exact simulation of the moving-point system, the cycle splitting that
classifies return times to the start vertex, and exact and asymptotic
counts of entries and moving points.
"""

from importlib import resources

from .asymptotics import (
    AsymptoticReport,
    count_lattice,
    leading_coefficients,
    n1_exact,
    sperner_coefficient,
)
from .cycles import (
    Circulation,
    NotCirculationError,
    enumerate_complete_tuples,
    enumerate_reachable_tuples,
    mu,
    omega,
    random_circulation,
    sigma_split,
    simple_cycles,
    split_trace,
    step1_walk,
)
from .graph import (
    Cycle,
    EdgeLength,
    GraphError,
    GraphFormatError,
    MetricDigraph,
    NoHamiltonianCycleError,
    betti,
    classify_and_order,
    from_dict,
    load_graph,
    loads_graph,
)
from .simulate import EventCapExceeded, EventLog, n_total, n_x, segment_count, simulate
from .timevec import TimeVector, compare_exact

__version__ = "0.1.0"

EXAMPLE_GRAPHS = ("fig4", "two_vertex", "triangle", "two_set")


def example_graph(name: str) -> MetricDigraph:
    """Load one of the bundled graphs listed in ``EXAMPLE_GRAPHS``."""
    if name not in EXAMPLE_GRAPHS:
        raise KeyError(f"unknown example graph {name!r}; choose from {EXAMPLE_GRAPHS}")
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text("utf-8")
    return loads_graph(text)
