import json
import math

import pytest

from cyclecount import (
    EdgeLength,
    GraphError,
    GraphFormatError,
    NoHamiltonianCycleError,
    betti,
    classify_and_order,
    from_dict,
    loads_graph,
    n_total,
    simulate,
)
from cyclecount.graph import IndependenceWarning, find_hamiltonian_cycle

from graphgen import random_document


def test_fig4_loads_with_beta_5(fig4):
    assert fig4.n == 4 and fig4.num_edges == 8
    assert betti(fig4) == 5


def test_cycle_graph_has_beta_1(make_cycle):
    g = make_cycle([2, 3, 5])
    assert betti(g) == 1
    assert g.outer_edges == ()


def test_two_set_graph_beta(two_set):
    assert (two_set.n, two_set.num_edges) == (10, 14)
    assert betti(two_set) == 5


def test_no_hamiltonian_cycle():
    doc = {
        "vertices": 3,
        "edges": [
            {"from": 1, "to": 2, "length": {"sqrt": 2}},
            {"from": 1, "to": 3, "length": {"sqrt": 3}},
            {"from": 2, "to": 1, "length": {"sqrt": 5}},
            {"from": 3, "to": 1, "length": {"sqrt": 7}},
        ],
    }
    with pytest.raises(NoHamiltonianCycleError, match="no Hamiltonian cycle"):
        from_dict(doc)


def test_fig2_vertex4_order(fig4):
    # vertex 4: outer 4->1, outer 4->3, inner 4->1 last
    order = fig4.out_order[4]
    heads = [fig4.edges[e].head for e in order]
    assert heads == [1, 3, 1]
    assert fig4.is_inner(order[-1]) and not fig4.is_inner(order[0])
    assert fig4.edges[order[0]].length == EdgeLength.sqrt(17)
    assert fig4.edges[order[-1]].length == EdgeLength.sqrt(19)


def test_single_outgoing_edge_order(fig4):
    assert fig4.out_order[3] == (fig4.inner_edge_of[3],)


def test_two_vertex_order(two_vertex):
    # 2->1 twice: first in file is inner, so the order is [outer e2, inner e1]
    assert two_vertex.out_order[2] == (2, 1)
    assert two_vertex.inner_edge_of == {1: 0, 2: 1}


def test_classify_is_idempotent(fig4):
    again = classify_and_order(fig4)
    assert again.out_order == fig4.out_order
    assert again.inner_edge_of == fig4.inner_edge_of


def test_reverse_outer_keeps_inner_last(fig4):
    rev = classify_and_order(fig4, reverse_outer=True)
    for v in range(1, fig4.n + 1):
        assert rev.out_order[v][-1] == fig4.inner_edge_of[v]
        assert rev.out_order[v][:-1] == fig4.out_order[v][:-1][::-1]


def test_renumbering_puts_start_first():
    doc = {
        "vertices": 3,
        "start": 2,
        "edges": [
            {"from": 2, "to": 3, "length": {"sqrt": 2}},
            {"from": 3, "to": 1, "length": {"sqrt": 3}},
            {"from": 1, "to": 2, "length": {"sqrt": 5}},
            {"from": 2, "to": 1, "length": {"sqrt": 7}},
        ],
    }
    g = from_dict(doc)
    assert g.labels == (2, 3, 1)
    assert [(e.tail, e.head) for e in g.edges] == [(1, 2), (2, 3), (3, 1), (1, 3)]


def test_declared_cycle_is_used_and_checked():
    base = json.loads(
        '{"vertices":3,"edges":['
        '{"from":1,"to":2,"length":{"sqrt":2}},{"from":2,"to":3,"length":{"sqrt":3}},'
        '{"from":3,"to":1,"length":{"sqrt":5}},{"from":1,"to":3,"length":{"sqrt":7}},'
        '{"from":3,"to":2,"length":{"sqrt":11}},{"from":2,"to":1,"length":{"sqrt":13}}]}'
    )
    assert from_dict(base).labels == (1, 2, 3)
    base["hamiltonian_cycle"] = [1, 3, 2]
    assert from_dict(base).labels == (1, 3, 2)
    base["hamiltonian_cycle"] = [1, 2]
    with pytest.raises(GraphError):
        from_dict(base)


def test_lexicographic_hamiltonian_search():
    arcs = [(1, 3), (3, 2), (2, 1), (1, 2), (2, 3), (3, 1)]
    assert find_hamiltonian_cycle(3, arcs) == (1, 2, 3)
    assert find_hamiltonian_cycle(3, [(1, 2), (2, 1), (1, 3), (3, 1)]) is None


@pytest.mark.parametrize(
    "length, exc",
    [
        ({"sqrt": 0}, GraphError),
        ({"sqrt": 8}, GraphError),
        ({"value": -1.0}, GraphError),
        ({"value": 0}, GraphError),
        ({"sqrt": 2, "value": 1.0}, GraphFormatError),
        ({"cubert": 2}, GraphFormatError),
        ({"sqrt": "2"}, GraphFormatError),
    ],
)
def test_bad_lengths(length, exc):
    doc = {"vertices": 2, "edges": [
        {"from": 1, "to": 2, "length": {"sqrt": 3}},
        {"from": 2, "to": 1, "length": length},
    ]}
    with pytest.raises(exc):
        from_dict(doc)


def test_duplicate_radicands_rejected():
    doc = {"vertices": 2, "edges": [
        {"from": 1, "to": 2, "length": {"sqrt": 3}},
        {"from": 2, "to": 1, "length": {"sqrt": 3}},
    ]}
    with pytest.raises(GraphError, match="linearly independent"):
        from_dict(doc)


def test_literal_lengths_warn():
    doc = {"vertices": 2, "edges": [
        {"from": 1, "to": 2, "length": {"value": 1.25}},
        {"from": 2, "to": 1, "length": {"sqrt": 3}},
    ]}
    with pytest.warns(IndependenceWarning):
        g = from_dict(doc)
    assert g.edges[0].length.value == 1.25


def test_edge_length_values():
    ln = EdgeLength.sqrt(7)
    assert math.isclose(ln.value ** 2, 7, rel_tol=1e-12)
    assert EdgeLength.of(2.5).value == 2.5


@pytest.mark.parametrize("text", ["not json", "[]", '{"vertices": 2}', '{"vertices": 0, "edges": []}'])
def test_format_errors(text):
    with pytest.raises(GraphFormatError):
        loads_graph(text)


def test_renumbering_preserves_point_counts(rng):
    # the same graph under two labelings yields identical N(T)
    for _ in range(5):
        doc = random_document(rng, 4, 6)
        g = from_dict(doc)
        perm = list(rng.permutation(4) + 1)
        relabel = {old: int(perm[old - 1]) for old in range(1, 5)}
        other = dict(doc)
        other["start"] = relabel[doc["start"]]
        other["edges"] = [
            {**e, "from": relabel[e["from"]], "to": relabel[e["to"]]} for e in doc["edges"]
        ]
        h = from_dict(other)
        lg, lh = simulate(g, 30.0), simulate(h, 30.0)
        for T in (3.3, 11.7, 23.9, 30.0):
            assert n_total(g, lg, T) == n_total(h, lh, T)
