"""Embeddable property-graph engine for climate-science knowledge graphs."""
from .engine import ExecStats, PlanError, ResultTable, UnboundVariable, plan, run_query
from .cypher import ParseError, parse, pretty_print
from .schema import builtin_climate_schema, load_schema, serialize_schema
from .snapshot import snapshot_load, snapshot_save
from .store import Direction, Graph, graph_equal
from .values import PropertyValue, ValueKind

__version__ = "0.1.0"

__all__ = [
    "Direction", "ExecStats", "Graph", "ParseError", "PlanError",
    "PropertyValue", "ResultTable", "UnboundVariable", "ValueKind",
    "builtin_climate_schema", "graph_equal", "load_schema", "parse", "plan",
    "pretty_print", "run_query", "serialize_schema", "snapshot_load",
    "snapshot_save",
]
