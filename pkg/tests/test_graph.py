import numpy as np
import pytest

from netsym import (
    ContractError,
    Graph,
    ParseError,
    induced_subgraph,
    largest_connected_component,
    load_edge_list,
    to_edge_list_text,
)
from netsym.graph import connected_components, dump_json

from helpers import fig2_fixture


def test_load_fig2_edge_list():
    g = load_edge_list("1 3\n2 4\n3 5\n4 5")
    assert g.n == 5
    assert g.num_edges == 4
    edges = {(g.labels[i], g.labels[j]) for i, j, _ in g.entries() if not g.directed}
    for u, v in [("1", "3"), ("2", "4"), ("3", "5"), ("4", "5")]:
        assert (u, v) in edges and (v, u) in edges


def test_load_empty_stream_errors():
    with pytest.raises(ParseError):
        load_edge_list("")
    with pytest.raises(ParseError):
        load_edge_list("# only a comment\n\n")


def test_load_relabels_in_first_appearance_order():
    g = load_edge_list("a b\nb c")
    assert g.labels == ["a", "b", "c"]
    assert g.index("a") == 0 and g.index("b") == 1 and g.index("c") == 2
    assert g.weight(0, 1) == 1.0 and g.weight(1, 2) == 1.0 and g.weight(0, 2) == 0.0


def test_load_weights_comments_and_duplicates():
    text = "# comment\n1 2 0.5\n\n2 3\n1 2 2.5\n"
    g = load_edge_list(text)
    assert g.weight(g.index("1"), g.index("2")) == 2.5  # last duplicate wins
    assert g.weight(g.index("2"), g.index("3")) == 1.0
    with pytest.raises(ParseError):
        load_edge_list("1 2 x")
    with pytest.raises(ParseError):
        load_edge_list("1 2 3 4")
    with pytest.raises(ParseError):
        load_edge_list("1 2 0.5", weighted=False)


def test_undirected_symmetry_and_dense():
    g = fig2_fixture()
    a = g.to_dense()
    assert np.array_equal(a, a.T)
    assert a.sum() == 2 * 4


def test_directed_graph_entries():
    g = load_edge_list("1 2\n2 3", directed=True)
    assert g.weight(0, 1) == 1.0 and g.weight(1, 0) == 0.0
    assert g.num_edges == 2
    assert set(g.in_neighbors(1)) == {0}


def test_round_trip_serialization():
    g = load_edge_list("a b 2.0\nb c\nc c 0.25\n")
    text = to_edge_list_text(g)
    h = load_edge_list(text)
    assert h.labels == g.labels
    assert sorted(h.entries()) == sorted(g.entries())
    assert dump_json(h) == dump_json(g)


def test_self_loops_allowed():
    g = Graph.from_edges(2, [(0, 0, 2.0), (0, 1)])
    assert g.weight(0, 0) == 2.0
    assert g.num_edges == 2
    assert g.strength(0) == 1.0  # loop excluded from strength


def test_induced_subgraph_fig2_top():
    g = fig2_fixture()
    sub = induced_subgraph(g, [0, 1, 2, 3])
    assert sub.n == 4
    assert sub.num_edges == 2
    assert sub.labels == ["1", "2", "3", "4"]
    assert sub.weight(0, 2) == 1.0 and sub.weight(1, 3) == 1.0


def test_induced_subgraph_edge_cases():
    g = fig2_fixture()
    empty = induced_subgraph(g, [])
    assert empty.n == 0
    k5 = Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    k3 = induced_subgraph(k5, [1, 2, 3])
    assert k3.n == 3 and k3.num_edges == 3
    with pytest.raises(ContractError):
        induced_subgraph(g, [7])


def test_largest_connected_component():
    g = fig2_fixture()
    assert largest_connected_component(g) is g  # connected: unchanged
    # two triangles plus an isolated vertex
    tri2 = Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    lcc = largest_connected_component(tri2)
    assert lcc.n == 3 and lcc.num_edges == 3
    assert lcc.labels == ["0", "1", "2"]  # tie broken by smallest min index
    # K4 plus a disjoint edge
    k4e = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)])
    assert largest_connected_component(k4e).n == 4


def test_lcc_idempotent():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4)])
    once = largest_connected_component(g)
    twice = largest_connected_component(once)
    assert sorted(once.entries()) == sorted(twice.entries())


def test_connected_components_directed_weak():
    g = load_edge_list("1 2\n3 2", directed=True)
    assert len(connected_components(g)) == 1
