"""In-memory directed property multigraph with label and property indexes.

The store is append-only: nodes and relationships are never deleted, so ids
are dense and stable (the i-th created node has id i-1). Property upserts are
allowed during the loading phase (ingest merge, enrichment) and keep the
secondary indexes consistent. After loading, the graph is published to
readers and must not be mutated.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .values import PropertyValue, ValueKind

DEFAULT_INDEXED_KEYS = ("Name", "title")


class GraphError(Exception):
    pass


class EmptyLabelSet(GraphError):
    def __init__(self):
        super().__init__("a node needs at least one label")


class UnknownNode(GraphError):
    def __init__(self, node_id: int):
        super().__init__(f"unknown node id {node_id}")
        self.node_id = node_id


class Direction(enum.Enum):
    OUT = "out"
    IN = "in"
    BOTH = "both"


@dataclass
class Node:
    id: int
    labels: frozenset
    properties: Dict[str, PropertyValue]


@dataclass
class Relationship:
    id: int
    rel_type: str
    src: int
    dst: int
    properties: Dict[str, PropertyValue]


class Graph:
    """Directed multigraph; parallel edges are distinct by relationship id."""

    def __init__(self, indexed_keys: Iterable[str] = DEFAULT_INDEXED_KEYS):
        self.indexed_keys: Tuple[str, ...] = tuple(indexed_keys)
        self.nodes: List[Node] = []
        self.rels: List[Relationship] = []
        self._out: List[List[int]] = []
        self._in: List[List[int]] = []
        self.label_index: Dict[str, List[int]] = {}
        # (label, key, text value) -> node ids, insertion (= ascending id) order
        self.prop_index: Dict[Tuple[str, str, str], List[int]] = {}

    # -- mutation ----------------------------------------------------------

    def add_node(self, labels: Iterable[str], properties: Dict[str, PropertyValue]) -> int:
        labels = frozenset(labels)
        if not labels:
            raise EmptyLabelSet()
        for key in properties:
            if not isinstance(key, str) or not key:
                raise GraphError(f"property keys must be non-empty strings, got {key!r}")
        node_id = len(self.nodes)
        node = Node(node_id, labels, dict(properties))
        self.nodes.append(node)
        self._out.append([])
        self._in.append([])
        for label in labels:
            self.label_index.setdefault(label, []).append(node_id)
            for key, value in node.properties.items():
                self._index_prop(label, key, value, node_id)
        return node_id

    def add_relationship(self, src: int, dst: int, rel_type: str,
                         properties: Dict[str, PropertyValue]) -> int:
        self._require_node(src)
        self._require_node(dst)
        rel_id = len(self.rels)
        self.rels.append(Relationship(rel_id, rel_type, src, dst, dict(properties)))
        self._out[src].append(rel_id)
        self._in[dst].append(rel_id)
        return rel_id

    def set_node_property(self, node_id: int, key: str, value: PropertyValue) -> None:
        """Upsert one property, keeping the property index consistent.

        Only used during the loading phase (ingest merge, enrichment).
        """
        node = self.node(node_id)
        old = node.properties.get(key)
        if old == value:
            return
        if old is not None:
            for label in node.labels:
                self._unindex_prop(label, key, old, node_id)
        node.properties[key] = value
        for label in node.labels:
            self._index_prop(label, key, value, node_id)

    def _index_prop(self, label: str, key: str, value: PropertyValue, node_id: int) -> None:
        if key in self.indexed_keys and value.kind is ValueKind.TEXT:
            bucket = self.prop_index.setdefault((label, key, value.value), [])
            if node_id not in bucket:
                bucket.append(node_id)

    def _unindex_prop(self, label: str, key: str, value: PropertyValue, node_id: int) -> None:
        if key in self.indexed_keys and value.kind is ValueKind.TEXT:
            bucket = self.prop_index.get((label, key, value.value))
            if bucket and node_id in bucket:
                bucket.remove(node_id)
                if not bucket:
                    del self.prop_index[(label, key, value.value)]

    # -- lookup ------------------------------------------------------------

    def node(self, node_id: int) -> Node:
        self._require_node(node_id)
        return self.nodes[node_id]

    def rel(self, rel_id: int) -> Relationship:
        if not 0 <= rel_id < len(self.rels):
            raise GraphError(f"unknown relationship id {rel_id}")
        return self.rels[rel_id]

    def has_node(self, node_id: int) -> bool:
        return 0 <= node_id < len(self.nodes)

    def node_count(self) -> int:
        return len(self.nodes)

    def rel_count(self) -> int:
        return len(self.rels)

    def nodes_by_label(self, label: str) -> List[int]:
        return sorted(self.label_index.get(label, []))

    def nodes_by_label_property(self, label: str, key: str,
                                value: PropertyValue) -> List[int]:
        if key in self.indexed_keys and value.kind is ValueKind.TEXT:
            return sorted(self.prop_index.get((label, key, value.value), []))
        return [nid for nid in self.nodes_by_label(label)
                if self.nodes[nid].properties.get(key) == value]

    def neighbors(self, node_id: int, direction: Direction = Direction.BOTH,
                  rel_type: Optional[str] = None) -> List[Tuple[int, int]]:
        """(rel id, other node id) pairs in insertion order; Both = Out then In."""
        self._require_node(node_id)
        pairs: List[Tuple[int, int]] = []
        if direction in (Direction.OUT, Direction.BOTH):
            for rid in self._out[node_id]:
                rel = self.rels[rid]
                if rel_type is None or rel.rel_type == rel_type:
                    pairs.append((rid, rel.dst))
        if direction in (Direction.IN, Direction.BOTH):
            for rid in self._in[node_id]:
                rel = self.rels[rid]
                if rel_type is None or rel.rel_type == rel_type:
                    pairs.append((rid, rel.src))
        return pairs

    def _require_node(self, node_id: int) -> None:
        if not isinstance(node_id, int) or not 0 <= node_id < len(self.nodes):
            raise UnknownNode(node_id)

    # -- maintenance -------------------------------------------------------

    def rebuild_indexes(self) -> None:
        """Recompute adjacency and indexes from nodes/rels (consistency oracle)."""
        self._out = [[] for _ in self.nodes]
        self._in = [[] for _ in self.nodes]
        self.label_index = {}
        self.prop_index = {}
        for node in self.nodes:
            for label in node.labels:
                self.label_index.setdefault(label, []).append(node.id)
                for key, value in node.properties.items():
                    self._index_prop(label, key, value, node.id)
        for rel in self.rels:
            self._out[rel.src].append(rel.id)
            self._in[rel.dst].append(rel.id)

    def index_snapshot(self):
        """Index contents in a comparable form, for rebuild-equality checks."""
        return (
            [sorted(adj) for adj in self._out],
            [sorted(adj) for adj in self._in],
            {k: sorted(v) for k, v in self.label_index.items()},
            {k: sorted(v) for k, v in self.prop_index.items()},
        )

    def copy(self) -> "Graph":
        g = Graph(self.indexed_keys)
        for node in self.nodes:
            g.add_node(node.labels, node.properties)
        for rel in self.rels:
            g.add_relationship(rel.src, rel.dst, rel.rel_type, rel.properties)
        return g


def graph_equal(a: Graph, b: Graph) -> bool:
    """Structural equality: same ids, labels, types, properties, indexed keys."""
    if a.indexed_keys != b.indexed_keys:
        return False
    if len(a.nodes) != len(b.nodes) or len(a.rels) != len(b.rels):
        return False
    for na, nb in zip(a.nodes, b.nodes):
        if na.id != nb.id or na.labels != nb.labels or na.properties != nb.properties:
            return False
    for ra, rb in zip(a.rels, b.rels):
        if (ra.id, ra.rel_type, ra.src, ra.dst) != (rb.id, rb.rel_type, rb.src, rb.dst):
            return False
        if ra.properties != rb.properties:
            return False
    return True
