"""Splitting circulations into cycles and enumerating reachable tuples.

Marks live on outer edges only.  At every vertex the marked edges always
form a prefix of ``out_order`` (a mark is put only on the edge the walk
just used, which is the first unmarked one), so "first unmarked edge" and
"first unmarked outer edge" coincide whenever the latter exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Cycle, MetricDigraph
from .timevec import TimeVector

__all__ = [
    "Circulation",
    "NotCirculationError",
    "SplitError",
    "CycleTuple",
    "WeightedCycleTuple",
    "is_conserving",
    "step1_walk",
    "split_trace",
    "sigma_split",
    "omega",
    "mu",
    "tuple_vector",
    "enumerate_complete_tuples",
    "enumerate_reachable_tuples",
    "simple_cycles",
    "random_circulation",
]

CycleTuple = tuple[Cycle, ...]
WeightedCycleTuple = tuple[tuple[Cycle, int], ...]


class NotCirculationError(ValueError):
    """Edge weights violate flow conservation."""


class SplitError(RuntimeError):
    """The splitting walk got stuck; the mark state is corrupted."""


def _imbalance(g: MetricDigraph, weights: Sequence[int]) -> dict[int, int]:
    bal = {v: 0 for v in range(1, g.n + 1)}
    for e, w in zip(g.edges, weights):
        bal[e.tail] += w
        bal[e.head] -= w
    return {v: b for v, b in bal.items() if b}


def is_conserving(g: MetricDigraph, weights: Sequence[int]) -> bool:
    return len(weights) == g.num_edges and not _imbalance(g, weights)


@dataclass(frozen=True)
class Circulation:
    """Non-negative integer edge weights, conserved at every vertex."""

    weights: tuple[int, ...]

    @classmethod
    def of(cls, g: MetricDigraph, weights: Iterable[int]) -> Circulation:
        weights = tuple(int(w) for w in weights)
        if len(weights) != g.num_edges:
            raise ValueError(f"expected {g.num_edges} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ValueError("circulation weights must be non-negative")
        bad = _imbalance(g, weights)
        if bad:
            raise NotCirculationError(f"flow not conserved at vertices {sorted(bad)}")
        return cls(weights)

    @classmethod
    def zero(cls, g: MetricDigraph) -> Circulation:
        return cls((0,) * g.num_edges)

    def __add__(self, other: Circulation) -> Circulation:
        return Circulation(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def scale(self, k: int) -> Circulation:
        if k < 0:
            raise ValueError("scale factor must be non-negative")
        return Circulation(tuple(k * w for w in self.weights))

    def is_zero(self) -> bool:
        return not any(self.weights)


def _walk(g: MetricDigraph, marked: frozenset[int] | set[int]) -> tuple[int, ...]:
    # edge ids of the loop, starting at the vertex where the walk closed
    seen: dict[int, int] = {}
    path: list[int] = []
    v = 1
    while v not in seen:
        seen[v] = len(path)
        for e in g.out_order[v]:
            if e not in marked:
                break
        else:
            raise SplitError(f"vertex {v} has no unmarked outgoing edge")
        path.append(e)
        v = g.edges[e].head
    return tuple(path[seen[v]:])


def step1_walk(g: MetricDigraph, marked: Iterable[int] = ()) -> Cycle:
    """Walk from vertex 1 along first unmarked edges until a vertex repeats."""
    return Cycle.from_edges(g, _walk(g, frozenset(marked)))


def split_trace(g: MetricDigraph, weights: Sequence[int]):
    """Run the splitting algorithm and keep every iteration.

    Returns ``(steps, residual, marked)`` where ``steps`` lists
    ``(cycle, multiplicity)`` for every walk, zero multiplicities
    included, ``residual`` is what is left of the weights (all zero on
    success) and ``marked`` the final mark set.
    """
    weights = tuple(weights)
    if len(weights) != g.num_edges or any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative, one per edge")
    bad = _imbalance(g, weights)
    if bad:
        raise NotCirculationError(f"flow not conserved at vertices {sorted(bad)}")
    h = list(weights)
    marked: set[int] = set()
    steps: list[tuple[Cycle, int]] = []
    while True:
        loop = _walk(g, marked)
        cycle = Cycle.from_edges(g, loop)
        k = min(h[e] for e in loop)
        for e in loop:
            h[e] -= k
        steps.append((cycle, k))
        if cycle.is_inner:
            if any(h[e] for e in loop):
                raise SplitError("inner cycle left non-zero; input is not a circulation")
            break
        for e in loop:
            if h[e] == 0 and not g.is_inner(e):
                marked.add(e)
                break
        else:
            raise SplitError(f"cycle {cycle.vertices} has no zero outer edge")
        if len(steps) > g.num_edges:
            raise SplitError("splitting did not terminate")
    return steps, tuple(h), frozenset(marked)


def sigma_split(g: MetricDigraph, h: Circulation | Sequence[int]) -> WeightedCycleTuple:
    """Split a circulation into weighted generated cycles (zeros dropped)."""
    weights = h.weights if isinstance(h, Circulation) else tuple(h)
    steps, _, _ = split_trace(g, weights)
    return tuple((c, k) for c, k in steps if k > 0)


def omega(g: MetricDigraph, counts: TimeVector | Sequence[int]) -> Circulation:
    """Read a time vector as edge weights; raises if it is not in H."""
    raw = counts.counts if isinstance(counts, TimeVector) else tuple(counts)
    return Circulation.of(g, raw)


def mu(g: MetricDigraph, counts: TimeVector | Sequence[int]) -> WeightedCycleTuple:
    return sigma_split(g, omega(g, counts))


def tuple_vector(num_edges: int, items: Iterable) -> tuple[int, ...]:
    """Edge-count vector of a cycle tuple, weighted or not."""
    v = [0] * num_edges
    for item in items:
        cycle, k = item if isinstance(item, tuple) else (item, 1)
        for e in cycle.edges:
            v[e] += k
    return tuple(v)


def _tuple_key(t: CycleTuple):
    return tuple(c.sort_key() for c in t)


def enumerate_complete_tuples(g: MetricDigraph) -> list[CycleTuple]:
    """All complete tuples of generated cycles, deduplicated and sorted.

    Depth-first over mark states: walk, and unless the cycle is inner,
    branch on every vertex of the cycle whose cycle edge is outer (that
    edge is the first unmarked outer edge there), mark it, and walk again.
    """
    found: set[CycleTuple] = set()

    def explore(marked: frozenset[int], acc: tuple[Cycle, ...]):
        loop = _walk(g, marked)
        cycle = Cycle.from_edges(g, loop)
        acc = acc + (cycle,)
        if cycle.is_inner:
            found.add(acc)
            return
        for e in loop:
            if not g.is_inner(e):
                explore(marked | {e}, acc)

    explore(frozenset(), ())
    return sorted(found, key=_tuple_key)


def _support_connected_to_start(g: MetricDigraph, vec: Sequence[int]) -> bool:
    adj: dict[int, list[int]] = {}
    for e, w in zip(g.edges, vec):
        if w:
            adj.setdefault(e.tail, []).append(e.head)
            adj.setdefault(e.head, []).append(e.tail)
    if 1 not in adj:
        return False
    stack, seen = [1], {1}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def is_reachable(g: MetricDigraph, s: CycleTuple) -> bool:
    """Unit-weight reachability: ``t(s)`` is an entry time and ``mu`` returns ``s``."""
    vec = tuple_vector(g.num_edges, s)
    if not _support_connected_to_start(g, vec):
        return False
    return mu(g, vec) == tuple((c, 1) for c in s)


def enumerate_reachable_tuples(
    g: MetricDigraph, complete: Sequence[CycleTuple] | None = None
) -> dict[int, list[CycleTuple]]:
    """Map ``k -> D_k`` for ``k = 1..beta``.

    Every non-empty subsequence of a complete tuple is a generated tuple;
    it is kept when :func:`is_reachable` accepts it.
    """
    if complete is None:
        complete = enumerate_complete_tuples(g)
    beta = g.beta
    found: dict[int, set[CycleTuple]] = {k: set() for k in range(1, beta + 1)}
    checked: set[CycleTuple] = set()
    for full in complete:
        for k in range(1, len(full) + 1):
            for idx in combinations(range(len(full)), k):
                s = tuple(full[i] for i in idx)
                if s in checked:
                    continue
                checked.add(s)
                if is_reachable(g, s):
                    found[k].add(s)
    return {k: sorted(v, key=_tuple_key) for k, v in found.items()}


def simple_cycles(g: MetricDigraph) -> list[Cycle]:
    """Every simple directed cycle, parallel edges giving distinct cycles."""
    out: list[Cycle] = []

    # each cycle is found once, from its smallest vertex
    def dfs(s: int, v: int, path: list[int], on_path: set[int]):
        for e in g.out_order[v]:
            w = g.edges[e].head
            if w == s:
                out.append(Cycle.from_edges(g, path + [e]))
            elif w > s and w not in on_path:
                on_path.add(w)
                dfs(s, w, path + [e], on_path)
                on_path.discard(w)

    for s in range(1, g.n + 1):
        dfs(s, s, [], {s})
    return sorted(out, key=Cycle.sort_key)


def random_circulation(
    g: MetricDigraph,
    seed=None,
    bound: int = 3,
    cycles: Sequence[Cycle] | None = None,
) -> Circulation:
    """Random non-negative combination of simple cycles, coefficients in ``[0, bound]``."""
    rng = np.random.default_rng(seed)
    if cycles is None:
        cycles = simple_cycles(g)
    coef = rng.integers(0, bound + 1, size=len(cycles))
    w = [0] * g.num_edges
    for c, k in zip(cycles, coef):
        for e in c.edges:
            w[e] += int(k)
    return Circulation(tuple(w))
