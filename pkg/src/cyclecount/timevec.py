"""Exact times as integer edge-traversal counts.

Because the edge lengths are linearly independent over Q, a time
``sum(counts[e] * length(e))`` determines ``counts`` uniquely, so equality
of times is decided on the count vectors and floats are only used to
compare against a horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .graph import MetricDigraph

__all__ = ["HorizonWarning", "HORIZON_EPS", "TimeVector", "add", "numeric", "compare_exact", "numeric_time"]

# event times closer than this to a horizon make the count fragile
HORIZON_EPS = 1e-9


class HorizonWarning(UserWarning):
    """A horizon sits within HORIZON_EPS of an event time."""


@dataclass(frozen=True, order=True)
class TimeVector:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError(f"negative traversal count in {self.counts}")

    @classmethod
    def zero(cls, num_edges: int) -> TimeVector:
        return cls((0,) * num_edges)

    @classmethod
    def unit(cls, num_edges: int, eid: int) -> TimeVector:
        c = [0] * num_edges
        c[eid] = 1
        return cls(tuple(c))

    @classmethod
    def of_walk(cls, num_edges: int, edge_ids: Sequence[int]) -> TimeVector:
        c = [0] * num_edges
        for e in edge_ids:
            c[e] += 1
        return cls(tuple(c))

    def __add__(self, other: TimeVector) -> TimeVector:
        if len(self.counts) != len(other.counts):
            raise ValueError("time vectors live over different edge sets")
        return TimeVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __len__(self):
        return len(self.counts)

    def is_zero(self) -> bool:
        return not any(self.counts)

    def numeric(self, g: MetricDigraph) -> float:
        return numeric_time(self.counts, g)


def numeric_time(counts: Sequence[int], g: MetricDigraph) -> float:
    # fsum is correctly rounded, so the result depends only on the vector
    return math.fsum(c * e.length.value for c, e in zip(counts, g.edges))


def add(u: TimeVector, v: TimeVector) -> TimeVector:
    return u + v


def numeric(v: TimeVector, g: MetricDigraph) -> float:
    return v.numeric(g)


def compare_exact(u: TimeVector, v: TimeVector) -> bool:
    """True when the two times are equal."""
    return u.counts == v.counts
