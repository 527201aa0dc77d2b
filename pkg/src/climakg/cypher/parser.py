"""Recursive-descent parser for the Cypher subset.

Grammar:

    query        := match_clause+ return_clause
    match_clause := MATCH path_pattern ("," path_pattern)* [WHERE expr]
    path_pattern := node_pat (rel_pat node_pat)*
    node_pat     := "(" [ident] [":" label ("|" label)*] [prop_map] ")"
    rel_pat      := "-[" [ident] ":" ident [prop_map] "]->"
                  | "<-[" [ident] ":" ident [prop_map] "]-"
                  | "-[" [ident] ":" ident [prop_map] "]-"
    prop_map     := "{" ident ":" literal ("," ident ":" literal)* "}"
    expr         := and_expr (OR and_expr)*
    and_expr     := term (AND term)*
    term         := "(" expr ")" | operand (CONTAINS | "=" | IN) operand
    operand      := ident "." ident | literal | list_literal
    return_clause:= RETURN ret_item ("," ret_item)*
    ret_item     := (ident "." ident | ident) [AS ident]

A WHERE binds to the nearest preceding MATCH. Parenthesized boolean
expressions are grouping only; the AST keeps the nesting but no explicit
paren node, and single-operand OR/AND chains collapse to the operand.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from ..values import PropertyValue
from .ast import (And, Compare, CompareOp, Literal, MatchClause, NodePattern,
                  Or, PathPattern, PropAccess, Query, RelDirection, RelPattern,
                  ReturnItem, Variable)
from .lexer import UNSUPPORTED_KEYWORDS, ParseError, Token, tokenize

__all__ = ["parse", "ParseError"]


def parse(text: str) -> Query:
    return _Parser(tokenize(text)).parse_query()


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- plumbing ----------------------------------------------------------

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.cur
        self.pos += 1
        return tok

    def error(self, expected: str) -> ParseError:
        tok = self.cur
        found = tok.text if tok.kind != "eof" else "end of input"
        return ParseError(tok.start, found, expected)

    def check_unsupported(self, context: str) -> None:
        tok = self.cur
        if tok.kind == "identifier" and tok.text.upper() in UNSUPPORTED_KEYWORDS:
            raise ParseError(tok.start, tok.text,
                             f"{context} ({tok.text.upper()} is not a supported feature)")

    def at_keyword(self, word: str) -> bool:
        return self.cur.kind == "keyword" and self.cur.text.upper() == word

    def eat_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> None:
        if not self.eat_keyword(word):
            raise self.error(word)

    def at_punct(self, text: str) -> bool:
        return self.cur.kind == "punct" and self.cur.text == text

    def eat_punct(self, text: str) -> bool:
        if self.at_punct(text):
            self.advance()
            return True
        return False

    def expect_punct(self, text: str) -> None:
        if not self.eat_punct(text):
            raise self.error(f"'{text}'")

    def expect_ident(self, what: str) -> str:
        if self.cur.kind != "identifier":
            raise self.error(what)
        return self.advance().text

    # -- grammar -----------------------------------------------------------

    def parse_query(self) -> Query:
        matches = []
        self.check_unsupported("MATCH")
        if not self.at_keyword("MATCH"):
            raise self.error("MATCH")
        while self.at_keyword("MATCH"):
            matches.append(self.parse_match_clause())
            self.check_unsupported("MATCH or RETURN")
        self.check_unsupported("RETURN")
        self.expect_keyword("RETURN")
        items = [self.parse_return_item()]
        while self.eat_punct(","):
            items.append(self.parse_return_item())
        self.check_unsupported("end of query")
        if self.cur.kind != "eof":
            raise self.error("end of query")
        return Query(tuple(matches), tuple(items))

    def parse_match_clause(self) -> MatchClause:
        self.expect_keyword("MATCH")
        patterns = [self.parse_path_pattern()]
        while self.eat_punct(","):
            patterns.append(self.parse_path_pattern())
        where = None
        if self.eat_keyword("WHERE"):
            where = self.parse_expr()
        return MatchClause(tuple(patterns), where)

    def parse_path_pattern(self) -> PathPattern:
        start = self.parse_node_pattern()
        steps = []
        while self.at_punct("-") or self.at_punct("<"):
            rel = self.parse_rel_pattern()
            node = self.parse_node_pattern()
            steps.append((rel, node))
        return PathPattern(start, tuple(steps))

    def parse_node_pattern(self) -> NodePattern:
        self.expect_punct("(")
        var = None
        if self.cur.kind == "identifier":
            var = self.advance().text
        labels: Tuple[str, ...] = ()
        if self.eat_punct(":"):
            names = [self.expect_ident("a label name")]
            while self.eat_punct("|"):
                names.append(self.expect_ident("a label name"))
            labels = tuple(names)
        props = self.parse_prop_map() if self.at_punct("{") else ()
        self.expect_punct(")")
        return NodePattern(var, labels, props)

    def parse_rel_pattern(self) -> RelPattern:
        if self.eat_punct("<"):
            self.expect_punct("-")
            var, rel_type, props = self.parse_rel_body()
            self.expect_punct("-")
            return RelPattern(rel_type, var, props, RelDirection.RIGHT_TO_LEFT)
        self.expect_punct("-")
        var, rel_type, props = self.parse_rel_body()
        self.expect_punct("-")
        if self.eat_punct(">"):
            return RelPattern(rel_type, var, props, RelDirection.LEFT_TO_RIGHT)
        return RelPattern(rel_type, var, props, RelDirection.UNDIRECTED)

    def parse_rel_body(self):
        self.expect_punct("[")
        var = None
        if self.cur.kind == "identifier":
            var = self.advance().text
        self.expect_punct(":")
        rel_type = self.expect_ident("a relationship type")
        props = self.parse_prop_map() if self.at_punct("{") else ()
        self.expect_punct("]")
        return var, rel_type, props

    def parse_prop_map(self) -> Tuple[Tuple[str, PropertyValue], ...]:
        self.expect_punct("{")
        entries = [self.parse_prop_entry()]
        while self.eat_punct(","):
            entries.append(self.parse_prop_entry())
        self.expect_punct("}")
        keys = [k for k, _ in entries]
        if len(set(keys)) != len(keys):
            raise self.error("distinct property keys in map")
        return tuple(entries)

    def parse_prop_entry(self) -> Tuple[str, PropertyValue]:
        key = self.expect_ident("a property key")
        self.expect_punct(":")
        return key, self.parse_literal_value()

    def parse_literal_value(self) -> PropertyValue:
        tok = self.cur
        if tok.kind == "string":
            self.advance()
            return PropertyValue.text(tok.value)
        if tok.kind == "int":
            self.advance()
            return PropertyValue.integer(tok.value)
        if tok.kind == "float":
            self.advance()
            return PropertyValue.real(tok.value)
        if self.at_punct("["):
            return self.parse_list_literal()
        raise self.error("a literal value")

    def parse_list_literal(self) -> PropertyValue:
        self.expect_punct("[")
        items = []
        if not self.at_punct("]"):
            items.append(self.parse_list_element())
            while self.eat_punct(","):
                items.append(self.parse_list_element())
        self.expect_punct("]")
        return PropertyValue.text_list(items)

    def parse_list_element(self) -> str:
        if self.cur.kind != "string":
            raise self.error("a string literal (list literals hold strings only)")
        return self.advance().value

    # -- expressions ---------------------------------------------------------

    def parse_expr(self):
        terms = [self.parse_and_expr()]
        while self.eat_keyword("OR"):
            terms.append(self.parse_and_expr())
        return terms[0] if len(terms) == 1 else Or(tuple(terms))

    def parse_and_expr(self):
        terms = [self.parse_term()]
        while self.eat_keyword("AND"):
            terms.append(self.parse_term())
        return terms[0] if len(terms) == 1 else And(tuple(terms))

    def parse_term(self):
        self.check_unsupported("a comparison or '('")
        if self.eat_punct("("):
            inner = self.parse_expr()
            self.expect_punct(")")
            return inner
        lhs = self.parse_operand()
        if self.eat_keyword("CONTAINS"):
            op = CompareOp.CONTAINS
        elif self.eat_keyword("IN"):
            op = CompareOp.IN
        elif self.eat_punct("="):
            op = CompareOp.EQ
        else:
            raise self.error("CONTAINS, IN or '='")
        rhs = self.parse_operand()
        return Compare(lhs, op, rhs)

    def parse_operand(self):
        self.check_unsupported("a property access or literal")
        if self.cur.kind == "identifier":
            var = self.advance().text
            self.expect_punct(".")
            key = self.expect_ident("a property key")
            return PropAccess(var, key)
        return Literal(self.parse_literal_value())

    def parse_return_item(self) -> ReturnItem:
        self.check_unsupported("a return expression")
        var = self.expect_ident("a variable")
        expr = PropAccess(var, self.expect_ident("a property key")) \
            if self.eat_punct(".") else Variable(var)
        alias = None
        if self.eat_keyword("AS"):
            alias = self.expect_ident("an alias")
        return ReturnItem(expr, alias)
