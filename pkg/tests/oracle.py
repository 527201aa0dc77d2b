"""Independent brute-force query evaluator used as the test oracle.

Evaluates a parsed query by exhaustively assigning every pattern position to
graph elements and checking all constraints, with no use of the engine's
planner, indexes or expansion order. Returns an unordered bag of projected
rows.
"""
from __future__ import annotations

import itertools
from collections import Counter

from climakg.cypher.ast import (And, Compare, CompareOp, Literal, Or,
                                PropAccess, RelDirection, Variable)
from climakg.values import PropertyValue, ValueKind

NODE = "node"
REL = "rel"


def brute_force_rows(query, graph):
    """List of projected value rows (order unspecified)."""
    counter = itertools.count()
    rows = [{}]
    for clause in query.matches:
        for pattern in clause.patterns:
            pattern_rows = _pattern_assignments(pattern, graph, counter)
            rows = _join(rows, pattern_rows)
        if clause.where is not None:
            rows = [r for r in rows if _eval(clause.where, r, graph)]
    return [_project_row(query.returns, row, graph) for row in rows]


def brute_force_bag(query, graph) -> Counter:
    return Counter(brute_force_rows(query, graph))


def _pattern_assignments(pattern, graph, counter):
    # slot order: unique node slots, then one slot per rel position
    node_positions = list(pattern.node_patterns())
    node_slots = []
    constraints = {}
    slot_of_position = []
    for node_pat in node_positions:
        slot = node_pat.var if node_pat.var is not None else f"_a{next(counter)}"
        if slot not in constraints:
            constraints[slot] = []
            node_slots.append(slot)
        constraints[slot].append(node_pat)
        slot_of_position.append(slot)

    candidates = {}
    for slot in node_slots:
        candidates[slot] = [
            node.id for node in graph.nodes
            if all(_node_ok(node, pat) for pat in constraints[slot])
        ]

    rel_pats = list(pattern.rel_patterns())
    assignments = []
    for combo in itertools.product(*(candidates[s] for s in node_slots)):
        binding = dict(zip(node_slots, combo))
        rel_choices = []
        for idx, rel_pat in enumerate(rel_pats):
            left = binding[slot_of_position[idx]]
            right = binding[slot_of_position[idx + 1]]
            rel_choices.append([
                rel.id for rel in graph.rels
                if _rel_ok(rel, rel_pat, left, right)
            ])
        for rel_combo in itertools.product(*rel_choices):
            if len(set(rel_combo)) != len(rel_combo):
                continue  # edges within one path pattern must be distinct
            row = {slot: (NODE, nid) for slot, nid in binding.items()}
            for idx, rel_pat in enumerate(rel_pats):
                slot = rel_pat.var if rel_pat.var is not None else f"_a{next(counter)}"
                row[slot] = (REL, rel_combo[idx])
            assignments.append(row)
    return assignments


def _node_ok(node, pat) -> bool:
    if pat.labels and not any(label in node.labels for label in pat.labels):
        return False
    return all(node.properties.get(k) == v for k, v in pat.props)


def _rel_ok(rel, pat, left, right) -> bool:
    if rel.rel_type != pat.rel_type:
        return False
    if not all(rel.properties.get(k) == v for k, v in pat.props):
        return False
    if pat.direction is RelDirection.LEFT_TO_RIGHT:
        return rel.src == left and rel.dst == right
    if pat.direction is RelDirection.RIGHT_TO_LEFT:
        return rel.src == right and rel.dst == left
    return (rel.src == left and rel.dst == right) or \
           (rel.src == right and rel.dst == left)


def _join(rows_a, rows_b):
    out = []
    for a in rows_a:
        for b in rows_b:
            shared = a.keys() & b.keys()
            if all(a[k] == b[k] for k in shared):
                merged = dict(a)
                merged.update(b)
                out.append(merged)
    return out


def _eval(expr, row, graph) -> bool:
    if isinstance(expr, Or):
        return any(_eval(t, row, graph) for t in expr.terms)
    if isinstance(expr, And):
        return all(_eval(t, row, graph) for t in expr.terms)
    lhs = _value(expr.lhs, row, graph)
    rhs = _value(expr.rhs, row, graph)
    if lhs is None or rhs is None:
        return False
    if expr.op is CompareOp.EQ:
        return lhs == rhs
    if expr.op is CompareOp.CONTAINS:
        if lhs.kind is ValueKind.TEXT and rhs.kind is ValueKind.TEXT:
            return rhs.value in lhs.value
        return False
    if lhs.kind is ValueKind.TEXT and rhs.kind is ValueKind.TEXT_LIST:
        return lhs.value in rhs.value
    return False


def _value(operand, row, graph):
    if isinstance(operand, Literal):
        return operand.value
    kind, eid = row[operand.var]
    element = graph.nodes[eid] if kind == NODE else graph.rels[eid]
    return element.properties.get(operand.key)


def _project_row(items, row, graph):
    values = []
    for item in items:
        if isinstance(item.expr, Variable):
            values.append(PropertyValue.integer(row[item.expr.name][1]))
        else:
            kind, eid = row[item.expr.var]
            element = graph.nodes[eid] if kind == NODE else graph.rels[eid]
            values.append(element.properties.get(item.expr.key))
    return tuple(values)
