"""Declarative registry of the climate ontology, with element validation.

The built-in schema covers the six node classes and two relationship types
used by the built-in question templates. Schemas are extensible by default so newly
ingested literature can introduce labels and keys without hard failures.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Tuple

from .store import Graph, Node, Relationship


class SchemaParseError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"schema line {line}: {message}")
        self.line = line
        self.detail = message


class ViolationKind(enum.Enum):
    UNKNOWN_LABEL = "UnknownLabel"
    UNKNOWN_REL_TYPE = "UnknownRelType"
    BAD_ENDPOINT = "BadEndpoint"
    UNKNOWN_PROPERTY_KEY = "UnknownPropertyKey"


@dataclass(frozen=True)
class Violation:
    element_id: int
    kind: ViolationKind
    detail: str
    warning: bool = False


@dataclass(eq=True)
class SchemaDef:
    node_labels: FrozenSet[str]
    # rel type -> (allowed src labels, allowed dst labels)
    rel_types: Dict[str, Tuple[FrozenSet[str], FrozenSet[str]]]
    # label or rel type -> known property keys
    property_keys: Dict[str, FrozenSet[str]]
    extensible: bool = True


def builtin_climate_schema() -> SchemaDef:
    entity = frozenset({"Weather_Event", "Teleconnection", "Model", "Project", "Location"})
    return SchemaDef(
        node_labels=frozenset({"Paper"}) | entity,
        rel_types={
            "Mention": (frozenset({"Paper"}), entity),
            "TargetsLocation": (frozenset({"Weather_Event", "Teleconnection"}),
                                frozenset({"Location"})),
        },
        property_keys={
            "Paper": frozenset({"title", "doi"}),
            "Weather_Event": frozenset({"Name"}),
            "Teleconnection": frozenset({"Name"}),
            "Model": frozenset({"Name"}),
            "Project": frozenset({"Name"}),
            "Location": frozenset({"Name", "wikidata_description"}),
            "Mention": frozenset({"Mention_Sentence"}),
            "TargetsLocation": frozenset(),
        },
        extensible=True,
    )


def load_schema(definition_text: str) -> SchemaDef:
    """Parse the line-oriented schema format (see serialize_schema)."""
    node_labels = set()
    rel_types: Dict[str, Tuple[FrozenSet[str], FrozenSet[str]]] = {}
    property_keys: Dict[str, set] = {}
    extensible = True

    for lineno, raw in enumerate(definition_text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        directive = fields[0]
        if directive == "node":
            if len(fields) != 2:
                raise SchemaParseError(lineno, "expected: node <Label>")
            node_labels.add(fields[1])
        elif directive == "rel":
            if len(fields) != 4 or not fields[2].startswith("src=") \
                    or not fields[3].startswith("dst="):
                raise SchemaParseError(lineno, "expected: rel <Type> src=<L,...> dst=<L,...>")
            rel_type = fields[1]
            src = frozenset(fields[2][4:].split(","))
            dst = frozenset(fields[3][4:].split(","))
            for label in src | dst:
                if label not in node_labels:
                    raise SchemaParseError(lineno, f"rel {rel_type} references undeclared label {label}")
            rel_types[rel_type] = (src, dst)
        elif directive == "prop":
            if len(fields) != 3:
                raise SchemaParseError(lineno, "expected: prop <Label|RelType> <key>")
            target = fields[1]
            if target not in node_labels and target not in rel_types:
                raise SchemaParseError(lineno, f"prop references undeclared target {target}")
            property_keys.setdefault(target, set()).add(fields[2])
        elif directive == "extensible":
            if len(fields) != 2 or fields[1] not in ("true", "false"):
                raise SchemaParseError(lineno, "expected: extensible <true|false>")
            extensible = fields[1] == "true"
        else:
            raise SchemaParseError(lineno, f"unknown directive {directive!r}")

    declared = set(node_labels) | set(rel_types)
    return SchemaDef(
        node_labels=frozenset(node_labels),
        rel_types=rel_types,
        property_keys={t: frozenset(property_keys.get(t, frozenset())) for t in declared},
        extensible=extensible,
    )


def serialize_schema(schema: SchemaDef) -> str:
    lines = []
    for label in sorted(schema.node_labels):
        lines.append(f"node {label}")
    for rel_type in sorted(schema.rel_types):
        src, dst = schema.rel_types[rel_type]
        lines.append(f"rel {rel_type} src={','.join(sorted(src))} dst={','.join(sorted(dst))}")
    for target in sorted(schema.property_keys):
        for key in sorted(schema.property_keys[target]):
            lines.append(f"prop {target} {key}")
    lines.append(f"extensible {'true' if schema.extensible else 'false'}")
    return "\n".join(lines) + "\n"


def validate_node(schema: SchemaDef, node: Node) -> List[Violation]:
    violations = []
    for label in sorted(node.labels):
        if label not in schema.node_labels:
            violations.append(Violation(node.id, ViolationKind.UNKNOWN_LABEL,
                                        f"label {label!r} is not declared",
                                        warning=schema.extensible))
    known_keys = set()
    for label in node.labels:
        known_keys |= schema.property_keys.get(label, frozenset())
    for key in sorted(node.properties):
        if key not in known_keys:
            violations.append(Violation(node.id, ViolationKind.UNKNOWN_PROPERTY_KEY,
                                        f"property key {key!r} unknown for labels "
                                        f"{sorted(node.labels)}",
                                        warning=schema.extensible))
    return violations


def validate_relationship(schema: SchemaDef, graph: Graph, rel: Relationship) -> List[Violation]:
    violations = []
    constraint = schema.rel_types.get(rel.rel_type)
    if constraint is None:
        violations.append(Violation(rel.id, ViolationKind.UNKNOWN_REL_TYPE,
                                    f"relationship type {rel.rel_type!r} is not declared",
                                    warning=schema.extensible))
    else:
        src_allowed, dst_allowed = constraint
        if not (graph.node(rel.src).labels & src_allowed):
            violations.append(Violation(rel.id, ViolationKind.BAD_ENDPOINT,
                                        f"{rel.rel_type} source labels "
                                        f"{sorted(graph.node(rel.src).labels)} not in "
                                        f"{sorted(src_allowed)}"))
        if not (graph.node(rel.dst).labels & dst_allowed):
            violations.append(Violation(rel.id, ViolationKind.BAD_ENDPOINT,
                                        f"{rel.rel_type} target labels "
                                        f"{sorted(graph.node(rel.dst).labels)} not in "
                                        f"{sorted(dst_allowed)}"))
    known_keys = schema.property_keys.get(rel.rel_type, frozenset())
    if constraint is not None:
        for key in sorted(rel.properties):
            if key not in known_keys:
                violations.append(Violation(rel.id, ViolationKind.UNKNOWN_PROPERTY_KEY,
                                            f"property key {key!r} unknown for "
                                            f"{rel.rel_type}",
                                            warning=schema.extensible))
    return violations


def schema_to_json(schema: SchemaDef) -> dict:
    """Stable JSON shape used by the HTTP schema endpoint."""
    return {
        "node_labels": sorted(schema.node_labels),
        "rel_types": {
            t: {"src": sorted(src), "dst": sorted(dst)}
            for t, (src, dst) in sorted(schema.rel_types.items())
        },
        "property_keys": {t: sorted(keys) for t, keys in sorted(schema.property_keys.items())},
        "extensible": schema.extensible,
    }
