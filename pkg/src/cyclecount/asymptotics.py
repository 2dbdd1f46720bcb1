"""Exact entry counts at the start vertex and leading asymptotic terms."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cycles import CycleTuple
from .graph import MetricDigraph
from .timevec import HORIZON_EPS, HorizonWarning

__all__ = [
    "AsymptoticReport",
    "count_lattice",
    "tuple_times",
    "n1_exact",
    "leading_coefficients",
    "sperner_coefficient",
]


def count_lattice(times: Sequence[float], T: float) -> int:
    """Number of integer vectors ``n >= 1`` with ``sum(n[j] * times[j]) <= T``.

    Depth-first over all coordinates but the last, which is counted in
    closed form and then nudged so the float comparison ``s + q*t <= T``
    holds literally.
    """
    if not times:
        return 0
    if any(t <= 0 for t in times):
        raise ValueError("times must be positive")
    ts = sorted(times, reverse=True)
    last = ts[-1]
    head = ts[:-1]
    k = len(head)
    near = False

    def tail_count(s: float) -> int:
        nonlocal near
        q = math.floor((T - s) / last)
        while q > 0 and s + q * last > T:
            q -= 1
        while s + (q + 1) * last <= T:
            q += 1
        if abs(s + q * last - T) < HORIZON_EPS or abs(s + (q + 1) * last - T) < HORIZON_EPS:
            near = True
        return max(q, 0)

    def rec(j: int, s: float) -> int:
        if j == k:
            return tail_count(s)
        total = 0
        t = head[j]
        m = 1
        # leave room for at least one copy of every later time
        rest = math.fsum(ts[j + 1:])
        while s + m * t + rest <= T:
            total += rec(j + 1, s + m * t)
            m += 1
        return total

    result = rec(0, 0.0) if math.fsum(ts) <= T else 0
    if near:
        warnings.warn(f"horizon {T!r} is within {HORIZON_EPS} of a lattice point", HorizonWarning, stacklevel=2)
    return result


def tuple_times(g: MetricDigraph, d: CycleTuple) -> list[float]:
    return [c.time(g) for c in d]


def n1_exact(g: MetricDigraph, D: Mapping[int, Sequence[CycleTuple]], T: float) -> int:
    """Entry count at vertex 1 up to ``T`` from the reachable tuples ``D``."""
    return sum(
        count_lattice(tuple_times(g, d), T)
        for k in sorted(D)
        for d in D[k]
    )


@dataclass(frozen=True)
class AsymptoticReport:
    """Leading coefficients of ``N_1(T) ~ a1 T^beta`` and ``N(T) ~ n_leading T^(beta-1)``."""

    beta: int
    a1: float
    n_leading: float
    tuple_count: int
    per_tuple_terms: list[tuple[int, float]] = field(default_factory=list)
    total_length: float = 0.0

    @property
    def single_tuple(self) -> bool:
        return self.tuple_count == 1

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "a1": self.a1,
            "n_leading": self.n_leading,
            "tuple_count": self.tuple_count,
            "total_length": self.total_length,
            "per_tuple_terms": [[i, t] for i, t in self.per_tuple_terms],
        }


def leading_coefficients(g: MetricDigraph, D_beta: Sequence[CycleTuple]) -> AsymptoticReport:
    beta = g.beta
    if not D_beta:
        raise ValueError("no complete tuples")
    for d in D_beta:
        if len(d) != beta:
            raise ValueError(f"tuple of length {len(d)} in D_beta (beta={beta})")
    fact = math.factorial(beta)
    terms = [(i, 1.0 / (fact * math.prod(tuple_times(g, d)))) for i, d in enumerate(D_beta)]
    a1 = math.fsum(t for _, t in terms)
    total = g.total_length
    return AsymptoticReport(
        beta=beta,
        a1=a1,
        n_leading=total * a1 * beta,
        tuple_count=len(D_beta),
        per_tuple_terms=terms,
        total_length=total,
    )


def sperner_coefficient(cycle_times: Sequence[float], total_length: float) -> float:
    """``total_length / ((beta - 1)! * prod(cycle_times))`` for a single cycle basis."""
    if not cycle_times or any(t <= 0 for t in cycle_times):
        raise ValueError("cycle times must be positive")
    beta = len(cycle_times)
    return total_length / (math.factorial(beta - 1) * math.prod(cycle_times))
