"""Query planning and execution over a graph.

Plans follow clause order: one NodeScan per first occurrence of a node
variable, Expand steps for relationship patterns, a Filter after each
clause's WHERE, and a final Project. Re-occurring variables join by identity
check instead of rebinding. Execution is deterministic: scans emit nodes in
ascending id order and expansions follow adjacency insertion order.

Missing properties make the enclosing comparison false (two-valued logic,
a deliberate simplification of openCypher's null semantics). CONTAINS and
IN applied to non-text stored values also evaluate false and bump a
diagnostics counter instead of aborting.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .cypher import parse
from .cypher.ast import (And, Compare, CompareOp, Literal, Or, PathPattern,
                         PropAccess, Query, RelDirection, ReturnItem, Variable)
from .cypher.printer import pretty_print
from .store import Direction, Graph
from .values import PropertyValue, ValueKind

NODE = "node"
REL = "rel"


class PlanError(Exception):
    pass


class UnboundVariable(PlanError):
    def __init__(self, var: str):
        super().__init__(f"variable {var!r} is never matched")
        self.var = var


@dataclass(frozen=True)
class NodeScan:
    var: str
    labels: Tuple[str, ...]
    props: Tuple[Tuple[str, PropertyValue], ...]


@dataclass(frozen=True)
class NodeCheck:
    """Re-occurrence of a bound node variable carrying extra constraints."""
    var: str
    labels: Tuple[str, ...]
    props: Tuple[Tuple[str, PropertyValue], ...]


@dataclass(frozen=True)
class Expand:
    from_var: str
    rel_slot: str  # binding slot; anonymous rels get generated slot names
    rel_type: str
    rel_props: Tuple[Tuple[str, PropertyValue], ...]
    direction: RelDirection
    to_var: str
    to_labels: Tuple[str, ...]
    to_props: Tuple[Tuple[str, PropertyValue], ...]
    to_is_bound: bool
    distinct_with: Tuple[str, ...]  # earlier rel slots in the same path pattern


@dataclass(frozen=True)
class Filter:
    expr: object


@dataclass(frozen=True)
class Project:
    items: Tuple[Tuple[str, object], ...]  # (column name, PropAccess | Variable)


Step = Union[NodeScan, NodeCheck, Expand, Filter, Project]


@dataclass(frozen=True)
class LogicalPlan:
    steps: Tuple[Step, ...]


@dataclass
class ExecStats:
    nodes_touched: int = 0
    type_mismatches: int = 0


@dataclass
class ResultTable:
    columns: List[str]
    rows: List[Tuple[Optional[PropertyValue], ...]]
    subgraph_nodes: frozenset
    subgraph_rels: frozenset
    binding_rows: List[Dict[str, Tuple[str, int]]] = field(default_factory=list)


# -- planning ---------------------------------------------------------------

def plan(query: Query) -> LogicalPlan:
    steps: List[Step] = []
    bound: Dict[str, str] = {}  # var -> NODE | REL
    anon = itertools.count()

    for clause in query.matches:
        for pattern_idx, pattern in enumerate(clause.patterns):
            _plan_pattern(pattern, steps, bound, anon)
        if clause.where is not None:
            _check_expr_vars(clause.where, bound)
            steps.append(Filter(clause.where))

    items = []
    for item in query.returns:
        if isinstance(item.expr, Variable):
            name = item.expr.name
        else:
            name = item.expr.var
        if name not in bound:
            raise UnboundVariable(name)
        column = item.alias if item.alias else _printed_item(item)
        items.append((column, item.expr))
    steps.append(Project(tuple(items)))
    return LogicalPlan(tuple(steps))


def _printed_item(item: ReturnItem) -> str:
    if isinstance(item.expr, Variable):
        return item.expr.name
    return f"{item.expr.var}.{item.expr.key}"


def _plan_pattern(pattern: PathPattern, steps, bound, anon) -> None:
    pattern_rel_slots: List[str] = []

    start = pattern.start
    current = start.var or f"_n{next(anon)}"
    if start.var is not None and start.var in bound:
        if bound[start.var] != NODE:
            raise PlanError(f"variable {start.var!r} is both a node and a relationship")
        if start.labels or start.props:
            steps.append(NodeCheck(current, start.labels, start.props))
    else:
        bound[current] = NODE
        steps.append(NodeScan(current, start.labels, start.props))

    for rel, node in pattern.steps:
        if rel.var is not None and rel.var in bound:
            raise PlanError(f"relationship variable {rel.var!r} is reused")
        rel_slot = rel.var or f"_r{next(anon)}"
        bound[rel_slot] = REL

        to_var = node.var or f"_n{next(anon)}"
        to_is_bound = node.var is not None and node.var in bound
        if to_is_bound and bound[node.var] != NODE:
            raise PlanError(f"variable {node.var!r} is both a node and a relationship")
        if not to_is_bound:
            bound[to_var] = NODE

        steps.append(Expand(current, rel_slot, rel.rel_type, rel.props,
                            rel.direction, to_var, node.labels, node.props,
                            to_is_bound, tuple(pattern_rel_slots)))
        pattern_rel_slots.append(rel_slot)
        current = to_var


def _check_expr_vars(expr, bound) -> None:
    if isinstance(expr, (And, Or)):
        for term in expr.terms:
            _check_expr_vars(term, bound)
    elif isinstance(expr, Compare):
        for operand in (expr.lhs, expr.rhs):
            if isinstance(operand, PropAccess) and operand.var not in bound:
                raise UnboundVariable(operand.var)


# -- execution ----------------------------------------------------------------

def execute(logical_plan: LogicalPlan, graph: Graph, use_index: bool = True,
            stats: Optional[ExecStats] = None) -> ResultTable:
    stats = stats if stats is not None else ExecStats()
    rows: List[Dict[str, Tuple[str, int]]] = [{}]

    for step in logical_plan.steps:
        if isinstance(step, NodeScan):
            candidates = _scan(graph, step.labels, step.props, use_index, stats)
            rows = [dict(row, **{step.var: (NODE, nid)})
                    for row in rows for nid in candidates]
        elif isinstance(step, NodeCheck):
            rows = [row for row in rows
                    if _node_matches(graph, row[step.var][1], step.labels, step.props)]
        elif isinstance(step, Expand):
            rows = _expand(graph, rows, step)
        elif isinstance(step, Filter):
            rows = [row for row in rows
                    if evaluate_predicate(step.expr, row, graph, stats)]
        elif isinstance(step, Project):
            return _project(graph, rows, step)
    raise PlanError("plan has no Project step")


def _scan(graph: Graph, labels, props, use_index: bool, stats: ExecStats) -> List[int]:
    if labels:
        candidate_ids: List[int] = []
        indexed_entry = None
        if use_index:
            for key, value in props:
                if key in graph.indexed_keys and value.kind is ValueKind.TEXT:
                    indexed_entry = (key, value.value)
                    break
        if indexed_entry is not None:
            key, text = indexed_entry
            seen = set()
            for label in labels:
                for nid in graph.prop_index.get((label, key, text), []):
                    if nid not in seen:
                        seen.add(nid)
                        candidate_ids.append(nid)
            candidate_ids.sort()
        else:
            seen = set()
            for label in labels:
                for nid in graph.label_index.get(label, []):
                    if nid not in seen:
                        seen.add(nid)
                        candidate_ids.append(nid)
            candidate_ids.sort()
    else:
        candidate_ids = list(range(graph.node_count()))

    result = []
    for nid in candidate_ids:
        stats.nodes_touched += 1
        if _node_matches(graph, nid, labels, props):
            result.append(nid)
    return result


def _node_matches(graph: Graph, nid: int, labels, props) -> bool:
    node = graph.nodes[nid]
    if labels and not any(label in node.labels for label in labels):
        return False
    return all(node.properties.get(key) == value for key, value in props)


def _expand(graph: Graph, rows, step: Expand):
    if step.direction is RelDirection.LEFT_TO_RIGHT:
        direction = Direction.OUT
    elif step.direction is RelDirection.RIGHT_TO_LEFT:
        direction = Direction.IN
    else:
        direction = Direction.BOTH

    out = []
    for row in rows:
        from_id = row[step.from_var][1]
        taken = {row[slot][1] for slot in step.distinct_with}
        for rel_id, other_id in graph.neighbors(from_id, direction, step.rel_type):
            if rel_id in taken:
                continue
            rel = graph.rels[rel_id]
            if not all(rel.properties.get(key) == value
                       for key, value in step.rel_props):
                continue
            if step.to_is_bound:
                if row[step.to_var][1] != other_id:
                    continue
                if not _node_matches(graph, other_id, step.to_labels, step.to_props):
                    continue
                out.append(dict(row, **{step.rel_slot: (REL, rel_id)}))
            else:
                if not _node_matches(graph, other_id, step.to_labels, step.to_props):
                    continue
                out.append(dict(row, **{step.rel_slot: (REL, rel_id),
                                        step.to_var: (NODE, other_id)}))
    return out


def _project(graph: Graph, rows, step: Project) -> ResultTable:
    columns = [name for name, _ in step.items]
    out_rows = []
    nodes = set()
    rels = set()
    for row in rows:
        values = []
        for _, expr in step.items:
            if isinstance(expr, Variable):
                kind, eid = row[expr.name]
                # Bare element returns project the element id.
                values.append(PropertyValue.integer(eid))
            else:
                kind, eid = row[expr.var]
                element = graph.nodes[eid] if kind == NODE else graph.rels[eid]
                values.append(element.properties.get(expr.key))
        out_rows.append(tuple(values))
        for kind, eid in row.values():
            (nodes if kind == NODE else rels).add(eid)
    return ResultTable(columns, out_rows, frozenset(nodes), frozenset(rels),
                       binding_rows=rows)


def evaluate_predicate(expr, bindings, graph: Graph,
                       stats: Optional[ExecStats] = None) -> bool:
    if isinstance(expr, Or):
        return any(evaluate_predicate(t, bindings, graph, stats) for t in expr.terms)
    if isinstance(expr, And):
        return all(evaluate_predicate(t, bindings, graph, stats) for t in expr.terms)
    if isinstance(expr, Compare):
        lhs = _operand_value(expr.lhs, bindings, graph)
        rhs = _operand_value(expr.rhs, bindings, graph)
        if lhs is None or rhs is None:
            return False
        if expr.op is CompareOp.EQ:
            return lhs == rhs
        if expr.op is CompareOp.CONTAINS:
            if lhs.kind is not ValueKind.TEXT or rhs.kind is not ValueKind.TEXT:
                if stats is not None:
                    stats.type_mismatches += 1
                return False
            return rhs.value in lhs.value
        if expr.op is CompareOp.IN:
            if lhs.kind is not ValueKind.TEXT or rhs.kind is not ValueKind.TEXT_LIST:
                if stats is not None:
                    stats.type_mismatches += 1
                return False
            return lhs.value in rhs.value
    raise TypeError(f"not a predicate: {expr!r}")


def _operand_value(operand, bindings, graph: Graph) -> Optional[PropertyValue]:
    if isinstance(operand, Literal):
        return operand.value
    kind, eid = bindings[operand.var]
    element = graph.nodes[eid] if kind == NODE else graph.rels[eid]
    return element.properties.get(operand.key)


def run_query(text: str, graph: Graph, use_index: bool = True,
              stats: Optional[ExecStats] = None) -> ResultTable:
    """Parse, plan and execute; raises ParseError or PlanError on bad input."""
    return execute(plan(parse(text)), graph, use_index=use_index, stats=stats)
