"""AST for the supported Cypher subset (MATCH / WHERE / RETURN)."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from ..values import PropertyValue


class RelDirection(enum.Enum):
    LEFT_TO_RIGHT = "->"
    RIGHT_TO_LEFT = "<-"
    UNDIRECTED = "--"


class CompareOp(enum.Enum):
    EQ = "="
    CONTAINS = "CONTAINS"
    IN = "IN"


@dataclass(frozen=True)
class PropAccess:
    var: str
    key: str


@dataclass(frozen=True)
class Literal:
    value: PropertyValue


Operand = Union[PropAccess, Literal]


@dataclass(frozen=True)
class Compare:
    lhs: Operand
    op: CompareOp
    rhs: Operand


@dataclass(frozen=True)
class And:
    terms: Tuple["Expr", ...]


@dataclass(frozen=True)
class Or:
    terms: Tuple["Expr", ...]


Expr = Union[Compare, And, Or]


@dataclass(frozen=True)
class NodePattern:
    var: Optional[str] = None
    labels: Tuple[str, ...] = ()  # disjunction: node matches any listed label
    props: Tuple[Tuple[str, PropertyValue], ...] = ()


@dataclass(frozen=True)
class RelPattern:
    rel_type: str
    var: Optional[str] = None
    props: Tuple[Tuple[str, PropertyValue], ...] = ()
    direction: RelDirection = RelDirection.LEFT_TO_RIGHT


@dataclass(frozen=True)
class PathPattern:
    start: NodePattern
    steps: Tuple[Tuple[RelPattern, NodePattern], ...] = ()

    def node_patterns(self):
        yield self.start
        for _, node in self.steps:
            yield node

    def rel_patterns(self):
        for rel, _ in self.steps:
            yield rel


@dataclass(frozen=True)
class MatchClause:
    patterns: Tuple[PathPattern, ...]
    where: Optional[Expr] = None


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class ReturnItem:
    expr: Union[PropAccess, Variable]
    alias: Optional[str] = None


@dataclass(frozen=True)
class Query:
    matches: Tuple[MatchClause, ...]
    returns: Tuple[ReturnItem, ...]
