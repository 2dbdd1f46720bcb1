import math

import numpy as np
import pytest

from cyclecount import EventCapExceeded, example_graph, n_total, n_x, segment_count, simulate
from cyclecount.timevec import HorizonWarning

from graphgen import random_graph


def brute_force_events(g, T):
    """Every (vertex, count vector) reachable by some walk from 1 within T, no merging tricks."""
    L = [e.length.value for e in g.edges]
    found = set()
    stack = [(1, (0,) * g.num_edges, 0.0)]
    while stack:
        v, c, t = stack.pop()
        if (v, c) in found:
            continue
        found.add((v, c))
        for e in g.out_order[v]:
            nt = t + L[e]
            if nt <= T:
                nc = list(c)
                nc[e] += 1
                stack.append((g.edges[e].head, tuple(nc), nt))
    return found


def test_pure_cycle_one_loop(make_cycle):
    g = make_cycle([2, 3, 5])
    L = g.total_length
    log = simulate(g, L + 0.01)
    assert sorted(log.vertices.tolist()) == [1, 1, 2, 3]
    assert n_x(log, 1) == 1
    assert n_x(log, 1, L - 0.01) == 0


def test_two_vertex_n1(two_vertex):
    log = simulate(two_vertex, 10.0)
    assert n_x(log, 1) == 7
    brute = brute_force_events(two_vertex, 10.0)
    assert sum(1 for v, c in brute if v == 1 and any(c)) == 7


def test_time_zero(fig4):
    log = simulate(fig4, 0.0)
    assert len(log) == 1
    assert n_x(log, 1) == 0
    assert n_total(fig4, log) == len(fig4.out_order[1])


def test_nothing_arrives_before_shortest_edge(fig4):
    log = simulate(fig4, 1.4)
    assert all(n_x(log, v) == 0 for v in range(1, 5))


def test_pure_cycle_has_one_point(make_cycle):
    g = make_cycle([2, 3, 5, 7])
    log = simulate(g, 60.0)
    L = g.total_length
    for T in np.linspace(0.1, 60.0, 37):
        assert n_total(g, log, T) == 1
        assert n_x(log, 1, T) == math.floor(T / L)


@pytest.mark.parametrize("seed", range(6))
def test_log_matches_brute_force(seed):
    g = random_graph(np.random.default_rng(seed), 4, 6)
    T = 18.5
    log = simulate(g, T)
    got = {(int(v), tuple(int(x) for x in c)) for v, c in zip(log.vertices, log.counts)}
    assert len(got) == len(log)
    assert got == brute_force_events(g, T)


def test_log_is_predecessor_closed(fig4):
    log = simulate(fig4, 25.0)
    keys = {(int(v), tuple(int(x) for x in c)) for v, c in zip(log.vertices, log.counts)}
    for v, c in keys:
        if not any(c):
            continue
        preds = []
        for e in fig4.edges:
            if e.head == v and c[e.id] > 0:
                pc = list(c)
                pc[e.id] -= 1
                preds.append((e.tail, tuple(pc)))
        assert any(p in keys for p in preds)


def test_log_in_time_order_and_events(fig4):
    log = simulate(fig4, 15.0)
    assert np.all(np.diff(log.times) >= 0)
    ev = list(log.events)
    assert ev[0].vertex == 1 and ev[0].time.is_zero()
    assert all(abs(e.numeric_time - e.time.numeric(fig4)) < 1e-12 for e in ev)


def test_counts_monotone(fig4):
    log = simulate(fig4, 40.0)
    for x in range(1, 5):
        vals = [n_x(log, x, T) for T in np.linspace(0, 40, 81)]
        assert vals == sorted(vals)


def test_whole_edge_segment_is_edge_share(fig4):
    log = simulate(fig4, 30.0)
    T = 30.0
    total = 0
    for e in fig4.edges:
        total += segment_count(fig4, log, T, e.id, 0.0, e.length.value)
    assert total == n_total(fig4, log, T)


def test_segment_from_far_vertex_at_zero(fig4):
    log = simulate(fig4, 0.0)
    assert segment_count(fig4, log, 0.0, 1, 0.0, 1.0) == 0
    assert segment_count(fig4, log, 0.0, 0, 0.0, 1.0) == 1


def test_segment_bounds(fig4):
    log = simulate(fig4, 5.0)
    with pytest.raises(ValueError):
        segment_count(fig4, log, 5.0, 0, 1.0, 1.0)
    with pytest.raises(ValueError):
        n_x(log, 1, 6.0)


def test_segment_on_start_edges_follows_n1(fig4):
    log = simulate(fig4, 60.0)
    T = 60.0
    for e in fig4.out_order[1]:
        ln = fig4.edges[e].length.value
        for r, tau in [(0.0, ln / 2), (ln / 3, ln / 2), (0.1, 0.2)]:
            seg = segment_count(fig4, log, T, e, r, tau)
            diff = n_x(log, 1, T - r) - n_x(log, 1, T - r - tau)
            assert abs(seg - diff) <= 1


def test_event_cap(fig4, monkeypatch):
    with pytest.raises(EventCapExceeded, match="event-cap"):
        simulate(fig4, 30.0, event_cap=100)
    monkeypatch.setenv("CYCLECOUNT_EVENT_CAP", "50")
    with pytest.raises(EventCapExceeded):
        simulate(fig4, 30.0)


def test_horizon_on_event_warns(fig4):
    with pytest.warns(HorizonWarning):
        simulate(fig4, math.sqrt(3))
