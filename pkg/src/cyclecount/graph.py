"""Directed Hamiltonian metric graphs.

A graph is loaded from a small JSON document, a Hamiltonian cycle through
the start vertex is fixed (declared or found by backtracking), and the
vertices are renumbered so that this cycle reads ``1 -> 2 -> ... -> n -> 1``
with the start vertex as ``1``.  The edges of that cycle are the *inner*
edges; every other edge is *outer*.  At each vertex the outgoing edges get a
fixed order with the inner edge last.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "EdgeLength",
    "Edge",
    "MetricDigraph",
    "Cycle",
    "GraphError",
    "GraphFormatError",
    "NoHamiltonianCycleError",
    "IndependenceWarning",
    "from_dict",
    "loads_graph",
    "load_graph",
    "betti",
    "classify_and_order",
    "find_hamiltonian_cycle",
]


class GraphFormatError(ValueError):
    """The document could not be parsed or does not follow the schema."""


class GraphError(ValueError):
    """The document parsed but describes an unusable graph."""


class NoHamiltonianCycleError(GraphError):
    pass


class IndependenceWarning(UserWarning):
    """Edge lengths could not be certified linearly independent over Q."""


def _is_square_free(k: int) -> bool:
    if k < 1:
        return False
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class EdgeLength:
    """Positive edge length, either ``sqrt(radicand)`` or a literal float."""

    kind: str
    radicand: int | None = None
    literal: float | None = None

    def __post_init__(self):
        if self.kind == "sqrt":
            if not isinstance(self.radicand, int) or self.radicand < 1:
                raise GraphError(f"sqrt radicand must be a positive integer, got {self.radicand!r}")
            if not _is_square_free(self.radicand):
                raise GraphError(f"sqrt radicand {self.radicand} is not square-free")
        elif self.kind == "literal":
            if self.literal is None or not math.isfinite(self.literal) or self.literal <= 0:
                raise GraphError(f"edge length must be positive, got {self.literal!r}")
        else:
            raise GraphError(f"unknown length kind {self.kind!r}")

    @classmethod
    def sqrt(cls, k: int) -> EdgeLength:
        return cls("sqrt", radicand=k)

    @classmethod
    def of(cls, x: float) -> EdgeLength:
        return cls("literal", literal=float(x))

    @property
    def value(self) -> float:
        if self.kind == "sqrt":
            return math.sqrt(self.radicand)
        return self.literal

    def to_json(self) -> dict:
        if self.kind == "sqrt":
            return {"sqrt": self.radicand}
        return {"value": self.literal}

    def __str__(self):
        return f"sqrt({self.radicand})" if self.kind == "sqrt" else repr(self.literal)


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    length: EdgeLength


@dataclass(frozen=True, eq=False)
class MetricDigraph:
    """A renumbered directed Hamiltonian metric graph.

    Vertices are ``1..n``; ``1`` is the start vertex and the inner edges
    form the cycle ``(1, 2, ..., n)``.  Edge ids are positions in the
    input document.

    Attributes
    ----------
    n : int
        Number of vertices.
    edges : tuple of Edge
        Edges in input order, endpoints already renumbered.
    inner_edge_of : Mapping[int, int]
        Vertex -> id of its designated inner edge.
    out_order : Mapping[int, tuple of int]
        Vertex -> outgoing edge ids, outer edges first, inner edge last.
    labels : tuple of int
        ``labels[i - 1]`` is the original label of renumbered vertex ``i``.
    """

    n: int
    edges: tuple[Edge, ...]
    inner_edge_of: Mapping[int, int] = field(default_factory=dict)
    out_order: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    labels: tuple[int, ...] = ()
    start: int = 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def beta(self) -> int:
        return betti(self)

    @property
    def lengths(self) -> np.ndarray:
        return np.array([e.length.value for e in self.edges])

    @property
    def total_length(self) -> float:
        return math.fsum(e.length.value for e in self.edges)

    @property
    def inner_edges(self) -> tuple[int, ...]:
        """Inner edge ids in cycle order, starting at vertex 1."""
        return tuple(self.inner_edge_of[v] for v in range(1, self.n + 1))

    @property
    def outer_edges(self) -> tuple[int, ...]:
        inner = set(self.inner_edge_of.values())
        return tuple(e.id for e in self.edges if e.id not in inner)

    def is_inner(self, eid: int) -> bool:
        return self.inner_edge_of.get(self.edges[eid].tail) == eid

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self.out_order[v]

    def to_dict(self) -> dict:
        """Document for the renumbered graph (vertex 1 is the start)."""
        return {
            "vertices": self.n,
            "start": 1,
            "edges": [
                {"from": e.tail, "to": e.head, "length": e.length.to_json()}
                for e in self.edges
            ],
            "hamiltonian_cycle": list(range(1, self.n + 1)),
        }


@dataclass(frozen=True)
class Cycle:
    """Simple directed cycle stored as edge ids.

    ``edges`` is rotated so that the edge leaving the smallest vertex comes
    first, which makes equality rotation-invariant.  ``walk`` keeps the
    order in which the cycle was traversed when it was found and takes no
    part in comparisons.
    """

    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    is_inner: bool
    walk: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_edges(cls, g: MetricDigraph, edge_ids: Sequence[int]) -> Cycle:
        edge_ids = tuple(edge_ids)
        if not edge_ids:
            raise GraphError("empty cycle")
        tails = [g.edges[e].tail for e in edge_ids]
        for a, b in zip(edge_ids, edge_ids[1:] + edge_ids[:1]):
            if g.edges[a].head != g.edges[b].tail:
                raise GraphError(f"edges {edge_ids} do not form a closed walk")
        if len(set(tails)) != len(tails):
            raise GraphError(f"edges {edge_ids} do not form a simple cycle")
        k = tails.index(min(tails))
        edges = edge_ids[k:] + edge_ids[:k]
        vertices = tuple(tails[k:] + tails[:k])
        inner = all(g.is_inner(e) for e in edges)
        return cls(edges, vertices, inner, walk=edge_ids)

    def indicator(self, num_edges: int) -> tuple[int, ...]:
        v = [0] * num_edges
        for e in self.edges:
            v[e] += 1
        return tuple(v)

    def time(self, g: MetricDigraph) -> float:
        return math.fsum(g.edges[e].length.value for e in self.edges)

    def sort_key(self):
        return (self.vertices, self.edges)

    def __len__(self):
        return len(self.edges)


def betti(g: MetricDigraph) -> int:
    """First Betti number ``|E| - |V| + 1``."""
    return g.num_edges - g.n + 1


def _hamiltonian_search(n: int, start: int, succ: Mapping[int, Sequence[int]]):
    path = [start]
    on_path = {start}

    def extend():
        v = path[-1]
        if len(path) == n:
            return start in succ[v]
        for w in succ[v]:
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if extend():
                return True
            path.pop()
            on_path.discard(w)
        return False

    return tuple(path) if extend() else None


def find_hamiltonian_cycle(n: int, arcs: Iterable[tuple[int, int]], start: int = 1):
    """Lexicographically smallest Hamiltonian cycle starting at ``start``.

    Returns the vertex sequence (without repeating ``start``) or ``None``.
    Plain exhaustive backtracking, fine for desk-sized graphs.
    """
    succ: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for a, b in arcs:
        if a != b:
            succ[a].add(b)
    ordered = {v: sorted(ws) for v, ws in succ.items()}
    return _hamiltonian_search(n, start, ordered)


def _parse_length(raw, where: str) -> EdgeLength:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise GraphFormatError(f"{where}: length must be exactly one of {{'sqrt': k}} or {{'value': x}}")
    (key, val), = raw.items()
    if key == "sqrt":
        if isinstance(val, bool) or not isinstance(val, int):
            raise GraphFormatError(f"{where}: sqrt radicand must be an integer")
        return EdgeLength.sqrt(val)
    if key == "value":
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise GraphFormatError(f"{where}: value must be a number")
        return EdgeLength.of(val)
    raise GraphFormatError(f"{where}: unknown length key {key!r}")


def _check_independence(lengths: Sequence[EdgeLength]) -> None:
    seen: dict[int, int] = {}
    literals = []
    for i, ln in enumerate(lengths):
        if ln.kind == "sqrt":
            if ln.radicand in seen:
                raise GraphError(
                    f"edges {seen[ln.radicand]} and {i} both have length sqrt({ln.radicand}); "
                    "lengths must be linearly independent over Q"
                )
            seen[ln.radicand] = i
        else:
            literals.append(i)
    if literals:
        warnings.warn(
            f"edges {literals} have literal lengths; linear independence over Q "
            "is not certified",
            IndependenceWarning,
            stacklevel=3,
        )


def classify_and_order(g: MetricDigraph, reverse_outer: bool = False) -> MetricDigraph:
    """Designate inner edges and fix the per-vertex edge order.

    The inner edge of vertex ``i`` is the earliest edge ``i -> i+1``
    (``n -> 1`` for the last vertex).  Outer edges are sorted by head,
    ties by input order; ``reverse_outer`` reverses that outer order, which
    is only useful for checking that results do not depend on it.  The
    inner edge always comes last.
    """
    n = g.n
    inner: dict[int, int] = {}
    for e in g.edges:
        nxt = e.tail % n + 1
        if e.head == nxt and e.tail not in inner:
            inner[e.tail] = e.id
    if len(inner) != n:
        missing = sorted(set(range(1, n + 1)) - set(inner))
        raise NoHamiltonianCycleError(f"no inner edge leaves vertices {missing}")
    order = {}
    for v in range(1, n + 1):
        outer = sorted(
            (e for e in g.edges if e.tail == v and e.id != inner[v]),
            key=lambda e: (e.head, e.id),
        )
        ids = [e.id for e in outer]
        if reverse_outer:
            ids.reverse()
        order[v] = tuple(ids) + (inner[v],)
    return MetricDigraph(n=n, edges=g.edges, inner_edge_of=inner, out_order=order, labels=g.labels)


def from_dict(doc: Mapping, check_independence: bool = True) -> MetricDigraph:
    """Build a validated, renumbered graph from a parsed JSON document."""
    if not isinstance(doc, Mapping):
        raise GraphFormatError("graph document must be a JSON object")
    try:
        n = doc["vertices"]
        raw_edges = doc["edges"]
    except KeyError as exc:
        raise GraphFormatError(f"missing field {exc.args[0]!r}") from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise GraphFormatError("'vertices' must be a positive integer")
    start = doc.get("start", 1)
    if isinstance(start, bool) or not isinstance(start, int) or not 1 <= start <= n:
        raise GraphFormatError(f"'start' must be a vertex in 1..{n}")
    if not isinstance(raw_edges, list):
        raise GraphFormatError("'edges' must be a list")

    arcs = []
    lengths = []
    for i, raw in enumerate(raw_edges):
        where = f"edge {i}"
        if not isinstance(raw, Mapping):
            raise GraphFormatError(f"{where}: must be an object")
        try:
            a, b, ln = raw["from"], raw["to"], raw["length"]
        except KeyError as exc:
            raise GraphFormatError(f"{where}: missing field {exc.args[0]!r}") from None
        for x in (a, b):
            if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
                raise GraphFormatError(f"{where}: endpoint {x!r} is not a vertex in 1..{n}")
        if a == b:
            raise GraphError(f"{where}: self-loops are not supported")
        arcs.append((a, b))
        lengths.append(_parse_length(ln, where))

    if check_independence:
        _check_independence(lengths)

    declared = doc.get("hamiltonian_cycle")
    arcset = set(arcs)
    if declared is not None:
        if (
            not isinstance(declared, list)
            or sorted(declared) != list(range(1, n + 1))
        ):
            raise GraphError("'hamiltonian_cycle' must list every vertex exactly once")
        k = declared.index(start)
        cycle = tuple(declared[k:] + declared[:k])
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if (a, b) not in arcset:
                raise NoHamiltonianCycleError(f"declared Hamiltonian cycle uses missing edge {a}->{b}")
    else:
        cycle = find_hamiltonian_cycle(n, arcs, start)
        if cycle is None:
            raise NoHamiltonianCycleError("no Hamiltonian cycle")

    new_id = {old: i + 1 for i, old in enumerate(cycle)}
    edges = tuple(
        Edge(i, new_id[a], new_id[b], ln) for i, ((a, b), ln) in enumerate(zip(arcs, lengths))
    )
    bare = MetricDigraph(n=n, edges=edges, labels=cycle)
    if betti(bare) < 1:
        raise GraphError("graph must have at least as many edges as vertices")
    return classify_and_order(bare)


def loads_graph(text: str, check_independence: bool = True) -> MetricDigraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    return from_dict(doc, check_independence=check_independence)


def load_graph(path: str | os.PathLike, check_independence: bool = True) -> MetricDigraph:
    with open(path, encoding="utf-8") as fh:
        return loads_graph(fh.read(), check_independence=check_independence)
