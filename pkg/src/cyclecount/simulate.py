"""Exact event simulation of points spreading over a metric digraph.

A point leaves vertex 1 at time 0 along every outgoing edge; whenever a
point reaches a vertex it is replaced by one point per outgoing edge.
Arrivals at the same vertex at the same instant merge into one.  An event
is keyed by ``(vertex, count vector)``; with rationally independent
lengths two arrivals coincide exactly when their keys do.
"""

from __future__ import annotations

import heapq
import math
import os
import warnings
from dataclasses import dataclass, field
from operator import mul
from typing import Iterator

import numpy as np

from .graph import MetricDigraph
from .timevec import HORIZON_EPS, HorizonWarning, TimeVector

__all__ = [
    "DEFAULT_EVENT_CAP",
    "Event",
    "EventLog",
    "EventCapExceeded",
    "default_event_cap",
    "simulate",
    "n_x",
    "n_total",
    "segment_count",
]

DEFAULT_EVENT_CAP = 10_000_000


class EventCapExceeded(RuntimeError):
    pass


def default_event_cap() -> int:
    raw = os.environ.get("CYCLECOUNT_EVENT_CAP")
    return int(raw) if raw else DEFAULT_EVENT_CAP


@dataclass(frozen=True)
class Event:
    vertex: int
    time: TimeVector
    numeric_time: float


@dataclass(frozen=True, eq=False)
class EventLog:
    """All arrival events with time ``<= horizon``, in time order.

    Row 0 is the seed (vertex 1, zero vector), which is a departure and
    not an entry.
    """

    horizon: float
    vertices: np.ndarray
    times: np.ndarray
    counts: np.ndarray
    by_vertex: dict[int, np.ndarray] = field(repr=False)

    def __len__(self):
        return len(self.times)

    @property
    def events(self) -> Iterator[Event]:
        for v, t, c in zip(self.vertices, self.times, self.counts):
            yield Event(int(v), TimeVector(tuple(int(x) for x in c)), float(t))

    def times_at(self, v: int) -> np.ndarray:
        """Sorted arrival times at ``v`` (the seed included for ``v = 1``)."""
        return self.by_vertex.get(v, np.empty(0))

    def _check(self, T: float):
        if T > self.horizon:
            raise ValueError(f"query time {T} exceeds the log horizon {self.horizon}")


def simulate(g: MetricDigraph, T: float, event_cap: int | None = None) -> EventLog:
    """Best-first expansion of arrival events up to time ``T``."""
    if T < 0 or not math.isfinite(T):
        raise ValueError("horizon must be a finite non-negative number")
    cap = default_event_cap() if event_cap is None else event_cap
    lengths = [e.length.value for e in g.edges]
    moves = {
        v: [(e, g.edges[e].head) for e in g.out_order[v]] for v in range(1, g.n + 1)
    }
    m = g.num_edges
    zero = (0,) * m
    heap = [(0.0, 1, zero)]
    last = None
    out_v: list[int] = []
    out_t: list[float] = []
    out_c: list[tuple[int, ...]] = []
    while heap:
        item = heapq.heappop(heap)
        t, v, c = item
        if t > T:
            break
        if item == last:
            # numeric time is a function of the vector, so duplicates pop together
            continue
        last = item
        if len(out_t) >= cap:
            raise EventCapExceeded(
                f"more than {cap} events before T={T}; raise the cap with --event-cap "
                "or CYCLECOUNT_EVENT_CAP"
            )
        out_v.append(v)
        out_t.append(t)
        out_c.append(c)
        for e, w in moves[v]:
            nc = c[:e] + (c[e] + 1,) + c[e + 1:]
            heapq.heappush(heap, (math.fsum(map(mul, nc, lengths)), w, nc))

    times = np.array(out_t, dtype=float)
    vertices = np.array(out_v, dtype=np.int64)
    counts = np.array(out_c, dtype=np.int64).reshape(len(out_c), m)
    by_vertex = {v: times[vertices == v] for v in range(1, g.n + 1)}
    log = EventLog(T, vertices, times, counts, by_vertex)
    _warn_if_near(times[1:], T)
    return log


def _warn_if_near(times: np.ndarray, T: float):
    # the seed is a departure and never an arrival on the horizon
    if times.size and np.any(np.abs(times - T) < HORIZON_EPS):
        warnings.warn(f"an event time lies within {HORIZON_EPS} of T={T}", HorizonWarning, stacklevel=3)


def _count_in(times: np.ndarray, lo: float, hi: float) -> int:
    # number of times in the half-open window (lo, hi]
    return int(np.searchsorted(times, hi, side="right") - np.searchsorted(times, lo, side="right"))


def n_x(log: EventLog, x: int, T: float | None = None) -> int:
    """Number of entry instants at vertex ``x`` in ``(0, T]``."""
    T = log.horizon if T is None else T
    log._check(T)
    return _count_in(log.times_at(x), 0.0, T)


def n_total(g: MetricDigraph, log: EventLog, T: float | None = None) -> int:
    """Points in flight at ``T``; a point occupies its edge on ``[entry, entry + length)``."""
    T = log.horizon if T is None else T
    log._check(T)
    total = 0
    for v in range(1, g.n + 1):
        ts = log.times_at(v)
        for e in g.out_order[v]:
            total += _count_in(ts, T - g.edges[e].length.value, T)
    return total


def segment_count(
    g: MetricDigraph, log: EventLog, T: float, e: int, r: float, tau: float
) -> int:
    """Points at ``T`` on the piece ``[r, r + tau)`` of edge ``e``, measured from its tail."""
    log._check(T)
    length = g.edges[e].length.value
    if r < 0 or tau <= 0 or r + tau > length * (1 + 1e-12):
        raise ValueError(f"segment [{r}, {r + tau}) does not fit on edge {e} of length {length}")
    return _count_in(log.times_at(g.edges[e].tail), T - r - tau, T - r)
