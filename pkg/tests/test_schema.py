"""Ontology registry: built-in schema, text format, element validation."""
import pytest

from climakg.schema import (SchemaParseError, ViolationKind,
                            builtin_climate_schema, load_schema,
                            serialize_schema, validate_node,
                            validate_relationship)
from climakg.store import Graph
from climakg.values import PropertyValue


def test_builtin_covers_domain():
    s = builtin_climate_schema()
    assert s.node_labels == frozenset({"Paper", "Weather_Event", "Teleconnection",
                                       "Model", "Project", "Location"})
    src, dst = s.rel_types["Mention"]
    assert src == frozenset({"Paper"})
    assert dst == frozenset({"Weather_Event", "Teleconnection", "Model",
                             "Project", "Location"})
    src, dst = s.rel_types["TargetsLocation"]
    assert src == frozenset({"Weather_Event", "Teleconnection"})
    assert dst == frozenset({"Location"})
    assert "Mention_Sentence" in s.property_keys["Mention"]
    assert s.extensible


def test_serialize_load_round_trip():
    s = builtin_climate_schema()
    assert load_schema(serialize_schema(s)) == s


def test_load_schema_comments_and_errors():
    text = "node A\nnode B  # trailing comment\nrel Links src=A dst=B\nprop Links weight\n"
    s = load_schema(text)
    assert s.node_labels == frozenset({"A", "B"})
    assert s.property_keys["Links"] == frozenset({"weight"})
    with pytest.raises(SchemaParseError) as info:
        load_schema("node A\nrel Bad src=A dst=Missing\n")
    assert info.value.line == 2
    with pytest.raises(SchemaParseError):
        load_schema("banana A\n")


def test_unknown_label_is_warning_when_extensible():
    s = builtin_climate_schema()
    g = Graph()
    g.add_node(["Instrument"], {})
    violations = validate_node(s, g.node(0))
    assert [v.kind for v in violations] == [ViolationKind.UNKNOWN_LABEL]
    assert violations[0].warning

    strict = load_schema(serialize_schema(s).replace("extensible true",
                                                     "extensible false"))
    assert not validate_node(strict, g.node(0))[0].warning


def test_unknown_property_key_flagged():
    s = builtin_climate_schema()
    g = Graph()
    g.add_node(["Model"], {"Name": PropertyValue.text("HadGEM3"),
                           "resolution": PropertyValue.text("N96")})
    kinds = [v.kind for v in validate_node(s, g.node(0))]
    assert kinds == [ViolationKind.UNKNOWN_PROPERTY_KEY]


def test_bad_endpoint_is_always_an_error():
    s = builtin_climate_schema()
    g = Graph()
    p = g.add_node(["Paper"], {"title": PropertyValue.text("t")})
    loc = g.add_node(["Location"], {"Name": PropertyValue.text("USA")})
    r = g.add_relationship(loc, p, "Mention", {})
    violations = validate_relationship(s, g, g.rel(r))
    assert all(v.kind is ViolationKind.BAD_ENDPOINT for v in violations)
    assert violations and not any(v.warning for v in violations)


def test_valid_elements_produce_no_violations(fixture_graph):
    s = builtin_climate_schema()
    for node in fixture_graph.nodes:
        assert validate_node(s, node) == []
    for rel in fixture_graph.rels:
        assert validate_relationship(s, fixture_graph, rel) == []
