"""Query language front end: lexer, parser, canonical printer."""
import random

import pytest

from climakg.cypher import (And, Compare, CompareOp, Literal, NodePattern,
                            Or, ParseError, PropAccess, RelDirection,
                            Variable, parse, pretty_print, tokenize)
from climakg.values import PropertyValue

from conformance import FLAGSHIP_QUERIES
from generators import random_ast


def test_flagship_queries_parse():
    for text in FLAGSHIP_QUERIES.values():
        query = parse(text)
        assert query.matches and query.returns


def test_flagship_queries_round_trip_through_printer():
    for text in FLAGSHIP_QUERIES.values():
        query = parse(text)
        assert parse(pretty_print(query)) == query


def test_basic_shapes():
    q = parse("MATCH (p:Paper)-[m:Mention]->(e:Model|Project) RETURN p.title")
    pattern = q.matches[0].patterns[0]
    assert pattern.start.labels == ("Paper",)
    rel, node = pattern.steps[0]
    assert rel.rel_type == "Mention" and rel.direction is RelDirection.LEFT_TO_RIGHT
    assert node.labels == ("Model", "Project")
    assert q.returns[0].expr == PropAccess("p", "title")


def test_prop_map_and_quotes():
    q1 = parse("MATCH (l:Location {Name: 'USA'}) RETURN l.Name")
    q2 = parse('MATCH (l:Location {Name: "USA"}) RETURN l.Name')
    assert q1 == q2
    assert q1.matches[0].patterns[0].start.props == \
        (("Name", PropertyValue.text("USA")),)


def test_keywords_case_insensitive():
    assert parse("match (n:Paper) return n.title") == \
        parse("MATCH (n:Paper) RETURN n.title")


def test_where_operators():
    q = parse("MATCH (n:Paper) WHERE n.title CONTAINS 'NAO' "
              "AND (n.year = 2020 OR n.title IN ['a', 'b']) RETURN n.title")
    where = q.matches[0].where
    assert isinstance(where, And)
    assert where.terms[0].op is CompareOp.CONTAINS
    assert isinstance(where.terms[1], Or)
    assert where.terms[1].terms[1].rhs == Literal(PropertyValue.text_list(["a", "b"]))


def test_singleton_boolean_collapse():
    # parens alone never introduce And/Or wrappers
    q = parse("MATCH (n:Paper) WHERE ((n.title = 'x')) RETURN n.title")
    assert isinstance(q.matches[0].where, Compare)


def test_bare_variable_return_and_aliases():
    q = parse("MATCH (n:Paper) RETURN n, n.title AS t")
    assert q.returns[0].expr == Variable("n")
    assert q.returns[1].alias == "t"


def test_string_escapes():
    q = parse(r"MATCH (n:Paper) WHERE n.title = 'it\'s \n \"q\"' RETURN n.title")
    lit = q.matches[0].where.rhs
    assert lit.value == PropertyValue.text('it\'s \n "q"')
    assert parse(pretty_print(q)) == q


def test_numeric_literals():
    q = parse("MATCH (n:Paper) WHERE n.year = -3 OR n.skill = 2.5e-1 RETURN n.year")
    ors = q.matches[0].where
    assert ors.terms[0].rhs == Literal(PropertyValue.integer(-3))
    assert ors.terms[1].rhs == Literal(PropertyValue.real(0.25))


@pytest.mark.parametrize("bad,expected_fragment", [
    ("MATCH (n:Paper RETURN n.title", "expected"),
    ("MATCH (n:Paper) RETURN", "expected"),
    ("RETURN n.title", "MATCH"),
    ("MATCH (n:Paper) WHERE RETURN n.title", "expected"),
    ("MATCH (n:Paper) WHERE n.title = RETURN n.title", "expected"),
    ("MATCH (n:Paper {title}) RETURN n.title", "expected"),
])
def test_syntax_errors_have_offsets(bad, expected_fragment):
    with pytest.raises(ParseError) as info:
        parse(bad)
    assert 0 <= info.value.offset <= len(bad)
    assert expected_fragment.lower() in str(info.value).lower()


@pytest.mark.parametrize("bad", [
    "MATCH (n:Paper) OPTIONAL MATCH (m:Paper) RETURN n.title",
    "MATCH (n:Paper) WITH n RETURN n.title",
    "MATCH (n:Paper) WHERE NOT n.title = 'x' RETURN n.title",
    "CREATE (n:Paper) RETURN n.title",
    "MATCH (n:Paper) RETURN n.title ORDER BY n.title",
])
def test_unsupported_features_named_in_error(bad):
    with pytest.raises(ParseError) as info:
        parse(bad)
    assert "not a supported feature" in str(info.value)


def test_printer_canonical_form():
    text = "match (p:Paper)-[m:Mention]->(w:Weather_Event {Name:'CAO'}) " \
           "where m.Mention_Sentence contains 'WW' or m.Mention_Sentence contains 'CAOs' " \
           "return p.title, m.Mention_Sentence"
    printed = pretty_print(parse(text))
    lines = printed.splitlines()
    assert lines[0].startswith("MATCH ")
    assert lines[1].startswith("WHERE ")
    assert lines[2].startswith("RETURN ")
    assert '"CAO"' in printed and "'" not in printed
    assert pretty_print(parse(printed)) == printed


def test_printer_parenthesizes_mixed_precedence():
    text = ("MATCH (n:Paper) WHERE (n.a = 'x' OR n.b = 'y') AND n.c = 'z' "
            "RETURN n.title")
    printed = pretty_print(parse(text))
    assert '(n.a = "x" OR n.b = "y") AND n.c = "z"' in printed
    assert parse(printed) == parse(text)


def test_tokenizer_positions():
    tokens = tokenize("MATCH (n)")
    assert tokens[0].start == 0 and tokens[0].end == 5
    assert tokens[-1].kind == "eof"


def test_duplicate_prop_map_keys_rejected():
    with pytest.raises(ParseError):
        parse("MATCH (n:Paper {title: 'a', title: 'b'}) RETURN n.title")


def test_fuzzed_round_trip_sample():
    rng = random.Random(20260826)
    for _ in range(100):
        ast = random_ast(rng)
        assert parse(pretty_print(ast)) == ast
