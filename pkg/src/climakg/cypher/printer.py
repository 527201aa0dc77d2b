"""Canonical printer: uppercase keywords, double quotes, one clause per line.

parse(pretty_print(ast)) reproduces the AST structurally.
"""
from __future__ import annotations

from ..values import PropertyValue, ValueKind
from .ast import (And, Compare, CompareOp, Literal, MatchClause, NodePattern,
                  Or, PathPattern, PropAccess, Query, RelDirection, RelPattern,
                  ReturnItem, Variable)

_OR_PREC = 1
_AND_PREC = 2


def pretty_print(query: Query) -> str:
    lines = []
    for clause in query.matches:
        lines.append("MATCH " + ", ".join(_path(p) for p in clause.patterns))
        if clause.where is not None:
            lines.append("WHERE " + _expr(clause.where, 0))
    lines.append("RETURN " + ", ".join(_return_item(i) for i in query.returns))
    return "\n".join(lines)


def _path(pattern: PathPattern) -> str:
    parts = [_node(pattern.start)]
    for rel, node in pattern.steps:
        parts.append(_rel(rel))
        parts.append(_node(node))
    return "".join(parts)


def _node(node: NodePattern) -> str:
    inner = node.var or ""
    if node.labels:
        inner += ":" + "|".join(node.labels)
    if node.props:
        inner += (" " if inner else "") + _prop_map(node.props)
    return f"({inner})"


def _rel(rel: RelPattern) -> str:
    body = rel.var or ""
    body += f":{rel.rel_type}"
    if rel.props:
        body += " " + _prop_map(rel.props)
    if rel.direction is RelDirection.LEFT_TO_RIGHT:
        return f"-[{body}]->"
    if rel.direction is RelDirection.RIGHT_TO_LEFT:
        return f"<-[{body}]-"
    return f"-[{body}]-"


def _prop_map(props) -> str:
    return "{" + ", ".join(f"{k}: {_value(v)}" for k, v in props) + "}"


def _value(value: PropertyValue) -> str:
    if value.kind is ValueKind.TEXT:
        return _quote(value.value)
    if value.kind is ValueKind.TEXT_LIST:
        return "[" + ", ".join(_quote(s) for s in value.value) + "]"
    if value.kind is ValueKind.REAL:
        return repr(value.value)
    return str(value.value)  # INT; BOOL has no literal syntax and never parses


def _quote(s: str) -> str:
    escaped = (s.replace("\\", "\\\\").replace('"', '\\"')
               .replace("\n", "\\n").replace("\t", "\\t"))
    return f'"{escaped}"'


def _expr(expr, parent_prec: int) -> str:
    if isinstance(expr, Compare):
        op = "=" if expr.op is CompareOp.EQ else expr.op.value
        return f"{_operand(expr.lhs)} {op} {_operand(expr.rhs)}"
    if isinstance(expr, And):
        text = " AND ".join(_expr(t, _AND_PREC) for t in expr.terms)
        return f"({text})" if parent_prec >= _AND_PREC else text
    if isinstance(expr, Or):
        text = " OR ".join(_expr(t, _OR_PREC) for t in expr.terms)
        return f"({text})" if parent_prec >= _OR_PREC else text
    raise TypeError(f"not an expression: {expr!r}")


def _operand(operand) -> str:
    if isinstance(operand, PropAccess):
        return f"{operand.var}.{operand.key}"
    if isinstance(operand, Literal):
        return _value(operand.value)
    raise TypeError(f"not an operand: {operand!r}")


def _return_item(item: ReturnItem) -> str:
    base = item.expr.name if isinstance(item.expr, Variable) \
        else f"{item.expr.var}.{item.expr.key}"
    return f"{base} AS {item.alias}" if item.alias else base
