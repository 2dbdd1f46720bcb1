import numpy as np
import pytest

from cyclecount import example_graph, n_total, n_x, segment_count, simulate
from cyclecount.walks import count_entries, count_points, count_segment, window_counts

from graphgen import random_graph


@pytest.mark.parametrize("seed", range(12))
def test_lattice_counts_match_simulator(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    g = random_graph(rng, n, n + int(rng.integers(1, 5)))
    T = 8.0 * float(g.lengths.max())
    log = simulate(g, T)
    Ts = rng.uniform(0, T, size=5)
    assert list(count_points(g, Ts)) == [n_total(g, log, t) for t in Ts]
    for x in range(1, n + 1):
        assert count_entries(g, x, Ts[0]) == n_x(log, x, Ts[0])
    for e in g.edges:
        ln = e.length.value
        r, tau = ln * 0.2, ln * 0.5
        assert count_segment(g, Ts[1], e.id, r, tau) == segment_count(g, log, Ts[1], e.id, r, tau)


def test_whole_log_size(fig4):
    log = simulate(fig4, 50.0)
    per_vertex = window_counts(fig4, [(v, -1.0, 50.0) for v in range(1, 5)])
    assert per_vertex.sum() == len(log)


def test_fig4_at_250_matches_recorded_simulation(fig4):
    # frozen from a full event simulation at T = 250 (2.93e6 events)
    assert count_points(fig4, 250.0) == 313181


def test_pure_cycle(make_cycle):
    g = make_cycle([2, 3, 5])
    assert list(count_points(g, [0.0, 1.0, 30.0])) == [1, 1, 1]
    assert count_entries(g, 1, 30.0) == int(30.0 // g.total_length)


def test_segment_bounds(fig4):
    with pytest.raises(ValueError):
        count_segment(fig4, 10.0, 0, 1.0, 5.0)
