"""Graph store: node/edge creation, indexes, adjacency, value semantics."""
import pytest

from climakg.store import (Direction, EmptyLabelSet, Graph, UnknownNode,
                           graph_equal)
from climakg.values import PropertyValue, ValueKind


def small_graph():
    g = Graph()
    a = g.add_node(["Location"], {"Name": PropertyValue.text("NORTH_AMERICA")})
    b = g.add_node(["Paper"], {"title": PropertyValue.text("A study")})
    c = g.add_node(["Weather_Event"], {"Name": PropertyValue.text("CAO")})
    g.add_relationship(b, c, "Mention",
                       {"Mention_Sentence": PropertyValue.text("CAOs hit.")})
    g.add_relationship(c, a, "TargetsLocation", {})
    return g, a, b, c


def test_ids_are_dense_and_sequential():
    g = Graph()
    ids = [g.add_node(["Paper"], {}) for _ in range(5)]
    assert ids == [0, 1, 2, 3, 4]
    assert g.node_count() == 5
    r0 = g.add_relationship(0, 1, "Cites", {})
    r1 = g.add_relationship(0, 1, "Cites", {})  # parallel edges allowed
    assert (r0, r1) == (0, 1)
    assert g.rel_count() == 2


def test_empty_label_set_rejected():
    g = Graph()
    with pytest.raises(EmptyLabelSet):
        g.add_node([], {})


def test_relationship_requires_existing_endpoints():
    g = Graph()
    g.add_node(["Paper"], {})
    with pytest.raises(UnknownNode):
        g.add_relationship(0, 7, "Cites", {})
    with pytest.raises(UnknownNode):
        g.add_relationship(7, 0, "Cites", {})


def test_value_variants_are_strict():
    assert PropertyValue.text("5") != PropertyValue.integer(5)
    assert PropertyValue.boolean(True) != PropertyValue.integer(1)
    assert PropertyValue.integer(2) != PropertyValue.real(2.0)
    assert PropertyValue.text("x") == PropertyValue.text("x")
    assert PropertyValue.text_list(["a", "b"]).value == ("a", "b")


def test_value_json_round_trip():
    for v in (PropertyValue.text("hi"), PropertyValue.integer(-3),
              PropertyValue.real(2.5), PropertyValue.boolean(False),
              PropertyValue.text_list(["a", "b"])):
        assert PropertyValue.from_json(v.to_json()) == v
    # bool/int disambiguation on the way back in
    assert PropertyValue.from_json(True).kind is ValueKind.BOOL
    assert PropertyValue.from_json(1).kind is ValueKind.INT


def test_label_index_sorted():
    g = Graph()
    for name in ("c", "a", "b"):
        g.add_node(["Model"], {"Name": PropertyValue.text(name)})
    assert g.nodes_by_label("Model") == [0, 1, 2]
    assert g.nodes_by_label("Paper") == []


def test_property_index_lookup():
    g, a, b, c = small_graph()
    assert g.nodes_by_label_property(
        "Location", "Name", PropertyValue.text("NORTH_AMERICA")) == [a]
    assert g.nodes_by_label_property(
        "Location", "Name", PropertyValue.text("nope")) == []
    # non-indexed key falls back to a scan and still answers correctly
    assert g.nodes_by_label_property(
        "Paper", "title", PropertyValue.text("A study")) == [b]


def test_set_node_property_updates_index():
    g, a, b, c = small_graph()
    g.set_node_property(a, "Name", PropertyValue.text("SOUTH_AMERICA"))
    assert g.nodes_by_label_property(
        "Location", "Name", PropertyValue.text("NORTH_AMERICA")) == []
    assert g.nodes_by_label_property(
        "Location", "Name", PropertyValue.text("SOUTH_AMERICA")) == [a]


def test_neighbors_directions():
    g, a, b, c = small_graph()
    assert [n for _, n in g.neighbors(c, Direction.OUT)] == [a]
    assert [n for _, n in g.neighbors(c, Direction.IN)] == [b]
    both = [n for _, n in g.neighbors(c, Direction.BOTH)]
    assert sorted(both) == sorted([a, b])
    assert g.neighbors(c, Direction.OUT, rel_type="Mention") == []


def test_rebuild_indexes_reproduces_incremental_state():
    g, *_ = small_graph()
    before = g.index_snapshot()
    g.rebuild_indexes()
    assert g.index_snapshot() == before


def test_copy_is_deep_enough():
    g, a, b, c = small_graph()
    h = g.copy()
    assert graph_equal(g, h)
    h.add_node(["Project"], {"Name": PropertyValue.text("CMIP6")})
    assert not graph_equal(g, h)
    assert g.node_count() == 3
