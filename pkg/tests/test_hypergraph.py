import pytest
from hypothesis import given, settings

from hyperwalk.errors import EmptyHypergraphError, ParseError
from hyperwalk.hypergraph import (
    from_label_edges,
    largest_component,
    load,
    loads,
    save,
    stats,
)

from conftest import hypergraphs


def test_basic_parse():
    g = loads("1,2,3\n3,4\n")
    assert (g.n, g.m) == (4, 2)
    assert g.edges == ((0, 1, 2), (2, 3))
    assert g.labels == (1, 2, 3, 4)


def test_duplicate_sets_collapse():
    g = loads("1,2\n2,1\n")
    assert g.m == 1


def test_singleton_line_dropped_not_error():
    g = loads("5\n1,2\n")
    assert (g.n, g.m) == (2, 1)


def test_repeated_vertex_collapses_within_edge():
    g = loads("3,3\n1,2\n")
    assert g.m == 1  # {3,3} is a singleton set and gets dropped


def test_whitespace_and_comments_and_crlf():
    g = loads("# comment\n1 2 3\r\n\r\n3 4\n")
    assert (g.n, g.m) == (4, 2)


def test_label_mode():
    g = loads("alice,bob\nbob,carol\n", label_mode=True)
    assert g.n == 3
    assert g.labels == ("alice", "bob", "carol")


def test_integer_mode_rejects_text_with_line_number():
    with pytest.raises(ParseError) as err:
        loads("1,2\n1,x\n")
    assert err.value.line_number == 2


def test_empty_after_filter():
    with pytest.raises(EmptyHypergraphError):
        loads("7\n# nothing\n")


def test_min_cardinality_filter():
    g = loads("1,2\n1,2,3\n4,5,6\n", min_cardinality=3)
    assert g.m == 2
    assert all(len(e) >= 3 for e in g.edges)


def test_degrees_and_cardinalities(t1):
    assert t1.degrees.tolist() == [1, 1, 2, 1]
    assert t1.cardinalities.tolist() == [3, 2]
    h = t1.incidence()
    assert h.sum(axis=1).A1.tolist() == [1, 1, 2, 1]
    assert h.sum(axis=0).A1.tolist() == [3, 2]


def test_largest_component_picks_bigger():
    g = from_label_edges([[1, 2], [3, 4], [4, 5]])
    c = largest_component(g)
    assert c.labels == (3, 4, 5)
    assert c.m == 2


def test_largest_component_identity_when_connected(t1):
    assert largest_component(t1) == t1


def test_largest_component_three_chain():
    g = from_label_edges([[1, 2], [2, 3], [7, 8]])
    c = largest_component(g)
    assert c.labels == (1, 2, 3)


def test_largest_component_tie_breaks_to_smallest_label():
    g = from_label_edges([[5, 6], [1, 2]])
    c = largest_component(g)
    assert c.labels == (1, 2)


def test_stats_toy(t1):
    s = stats(t1)
    assert (s.n, s.m) == (4, 2)
    assert s.mean_degree == pytest.approx(1.25)
    assert s.mean_cardinality == pytest.approx(2.5)


def test_stats_single_edge():
    s = stats(from_label_edges([[1, 2]]))
    assert (s.n, s.m, s.mean_degree, s.mean_cardinality) == (2, 1, 1.0, 2.0)


@given(hypergraphs())
def test_incidence_double_counting(g):
    assert g.degrees.sum() == g.cardinalities.sum()


@given(hypergraphs())
def test_largest_component_idempotent(g):
    once = largest_component(g)
    assert largest_component(once) == once


@given(g=hypergraphs())
@settings(max_examples=30)
def test_save_load_roundtrip(tmp_path_factory, g):
    path = tmp_path_factory.mktemp("io") / "g.txt"
    save(g, path)
    back = load(path)
    original = {frozenset(g.labels[v] for v in e) for e in g.edges}
    reloaded = {frozenset(back.labels[v] for v in e) for e in back.edges}
    assert original == reloaded


def test_after_component_no_isolated_vertices():
    g = largest_component(from_label_edges([[1, 2], [2, 3], [9, 10]]))
    assert (g.degrees > 0).all()


def test_label_mode_save_load_roundtrip(tmp_path):
    g = loads("walnut,pecan,almond\nalmond,cashew\n", label_mode=True)
    path = tmp_path / "named.txt"
    save(g, path)
    back = load(path, label_mode=True)
    original = {frozenset(g.labels[v] for v in e) for e in g.edges}
    assert original == {frozenset(back.labels[v] for v in e) for e in back.edges}
