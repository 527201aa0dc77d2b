"""Lexer, parser and canonical printer for the Cypher subset."""
from .ast import (And, Compare, CompareOp, Literal, MatchClause, NodePattern,
                  Or, PathPattern, PropAccess, Query, RelDirection, RelPattern,
                  ReturnItem, Variable)
from .lexer import ParseError, Token, tokenize
from .parser import parse
from .printer import pretty_print

__all__ = [
    "And", "Compare", "CompareOp", "Literal", "MatchClause", "NodePattern",
    "Or", "ParseError", "PathPattern", "PropAccess", "Query", "RelDirection",
    "RelPattern", "ReturnItem", "Token", "Variable", "parse", "pretty_print",
    "tokenize",
]
