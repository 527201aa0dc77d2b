"""NDJSON corpus loading with entity deduplication and schema validation.

One JSON record per line, discriminated by the ``kind`` field:

    {"kind": "entity", "label": "Location", "name": "NORTH_AMERICA",
     "properties": {...}}
    {"kind": "paper", "title": "...", "doi": "..."}
    {"kind": "mention", "paper": "<doi-or-title>", "target": "Label:Name",
     "sentence": "..."}
    {"kind": "relation", "rel_type": "TargetsLocation", "src": "Label:Name",
     "dst": "Label:Name", "properties": {...}}

Entities are keyed by (label, Name) and papers by doi when present, else
title; relation endpoints use "Label:Name" key strings, with papers
addressable as "Paper:<doi-or-title>". Re-ingesting an entity merges its
properties last-writer-wins. Mentions create one parallel edge per sentence
unless dedup_mentions is set.
"""
from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .schema import SchemaDef, validate_node, validate_relationship
from .store import Graph, Node, Relationship
from .values import PropertyValue

log = logging.getLogger(__name__)


class RecordError(Exception):
    def __init__(self, lineno: int, field_name: str, message: str):
        super().__init__(f"line {lineno}, field {field_name!r}: {message}")
        self.lineno = lineno
        self.field = field_name


class DanglingReference(Exception):
    def __init__(self, key: str):
        super().__init__(f"record references unknown key {key!r}")
        self.key = key


class IoFailure(Exception):
    pass


class ApplyOutcome(enum.Enum):
    CREATED = "created"
    MERGED = "merged"
    REJECTED = "rejected"


@dataclass(frozen=True)
class IngestRecord:
    kind: str  # entity | paper | mention | relation
    label: Optional[str] = None
    name: Optional[str] = None
    properties: Tuple[Tuple[str, PropertyValue], ...] = ()
    title: Optional[str] = None
    doi: Optional[str] = None
    paper: Optional[str] = None
    target: Optional[str] = None
    sentence: Optional[str] = None
    rel_type: Optional[str] = None
    src: Optional[str] = None
    dst: Optional[str] = None


@dataclass
class IngestStats:
    records_read: int = 0
    nodes_created: int = 0
    nodes_merged: int = 0
    edges_created: int = 0
    errors: int = 0
    warnings: int = 0

    def to_json(self) -> dict:
        return {
            "records_read": self.records_read,
            "nodes_created": self.nodes_created,
            "nodes_merged": self.nodes_merged,
            "edges_created": self.edges_created,
            "errors": self.errors,
            "warnings": self.warnings,
        }


def parse_record(line: str, lineno: int = 0) -> IngestRecord:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(lineno, "", f"invalid JSON: {exc.msg}")
    if not isinstance(raw, dict):
        raise RecordError(lineno, "", "record must be a JSON object")
    kind = raw.get("kind")
    if kind not in ("entity", "paper", "mention", "relation"):
        raise RecordError(lineno, "kind", f"unknown record kind {kind!r}")

    def need(field_name: str) -> object:
        value = raw.get(field_name)
        if value is None:
            raise RecordError(lineno, field_name, f"required for kind {kind!r}")
        return value

    props: Tuple[Tuple[str, PropertyValue], ...] = ()
    if "properties" in raw:
        if not isinstance(raw["properties"], dict):
            raise RecordError(lineno, "properties", "must be an object")
        try:
            props = tuple((k, PropertyValue.from_json(v))
                          for k, v in raw["properties"].items())
        except (ValueError, TypeError) as exc:
            raise RecordError(lineno, "properties", str(exc))

    if kind == "entity":
        return IngestRecord(kind, label=str(need("label")), name=str(need("name")),
                            properties=props)
    if kind == "paper":
        doi = raw.get("doi")
        return IngestRecord(kind, title=str(need("title")),
                            doi=str(doi) if doi is not None else None,
                            properties=props)
    if kind == "mention":
        return IngestRecord(kind, paper=str(need("paper")), target=str(need("target")),
                            sentence=str(need("sentence")))
    return IngestRecord(kind, rel_type=str(need("rel_type")), src=str(need("src")),
                        dst=str(need("dst")), properties=props)


class Ingestor:
    """Applies records into a graph, deduplicating against existing content."""

    def __init__(self, graph: Graph, schema: SchemaDef, strict: bool = False,
                 dedup_mentions: bool = False):
        self.graph = graph
        self.schema = schema
        self.strict = strict
        self.dedup_mentions = dedup_mentions
        self.stats = IngestStats()
        self._entity_ids: Dict[Tuple[str, str], int] = {}
        self._paper_ids: Dict[str, int] = {}
        self._relations: Dict[Tuple[int, int, str], List[dict]] = {}
        self._mentions = set()
        self._seed_from_graph()

    def _seed_from_graph(self) -> None:
        for node in self.graph.nodes:
            if "Paper" in node.labels:
                for key in ("doi", "title"):
                    value = node.properties.get(key)
                    if value is not None:
                        self._paper_ids.setdefault(value.value, node.id)
            name = node.properties.get("Name")
            if name is not None:
                for label in node.labels:
                    self._entity_ids.setdefault((label, name.value), node.id)
        for rel in self.graph.rels:
            if rel.rel_type == "Mention":
                sentence = rel.properties.get("Mention_Sentence")
                if sentence is not None:
                    self._mentions.add((rel.src, rel.dst, sentence.value))
            else:
                bucket = self._relations.setdefault((rel.src, rel.dst, rel.rel_type), [])
                bucket.append(dict(rel.properties))

    # -- key resolution -----------------------------------------------------

    def _resolve_key(self, key: str) -> int:
        if key.startswith("Paper:"):
            return self._resolve_paper(key[len("Paper:"):])
        label, sep, name = key.partition(":")
        if sep:
            node_id = self._entity_ids.get((label, name))
            if node_id is not None:
                return node_id
        raise DanglingReference(key)

    def _resolve_paper(self, key: str) -> int:
        node_id = self._paper_ids.get(key)
        if node_id is None:
            raise DanglingReference(key)
        return node_id

    # -- application --------------------------------------------------------

    def apply_record(self, record: IngestRecord) -> ApplyOutcome:
        if record.kind == "entity":
            return self._apply_node((record.label, record.name), [record.label],
                                    {"Name": PropertyValue.text(record.name),
                                     **dict(record.properties)})
        if record.kind == "paper":
            key = record.doi if record.doi is not None else record.title
            props = {"title": PropertyValue.text(record.title)}
            if record.doi is not None:
                props["doi"] = PropertyValue.text(record.doi)
            props.update(dict(record.properties))
            return self._apply_paper(key, props)
        if record.kind == "mention":
            return self._apply_mention(record)
        return self._apply_relation(record)

    def _count_violations(self, violations) -> int:
        error_count = 0
        for violation in violations:
            if violation.warning:
                self.stats.warnings += 1
            else:
                self.stats.errors += 1
                error_count += 1
        return error_count

    def _apply_node(self, key, labels, props) -> ApplyOutcome:
        existing = self._entity_ids.get(key)
        return self._upsert(existing, labels, props,
                            lambda nid: self._entity_ids.__setitem__(key, nid))

    def _apply_paper(self, key, props) -> ApplyOutcome:
        existing = self._paper_ids.get(key)

        def register(nid: int) -> None:
            self._paper_ids[key] = nid
            title = props.get("title")
            if title is not None:
                self._paper_ids.setdefault(title.value, nid)

        return self._upsert(existing, ["Paper"], props, register)

    def _upsert(self, existing, labels, props, register) -> ApplyOutcome:
        if existing is not None:
            for key, value in props.items():
                self.graph.set_node_property(existing, key, value)
            self.stats.nodes_merged += 1
            node = self.graph.node(existing)
            self._count_violations(validate_node(self.schema, node))
            return ApplyOutcome.MERGED
        probe = Node(self.graph.node_count(), frozenset(labels), dict(props))
        violations = validate_node(self.schema, probe)
        if self.strict and self._count_violations(violations):
            return ApplyOutcome.REJECTED
        node_id = self.graph.add_node(labels, props)
        register(node_id)
        self.stats.nodes_created += 1
        return ApplyOutcome.CREATED

    def _apply_mention(self, record: IngestRecord) -> ApplyOutcome:
        src = self._resolve_paper(record.paper)
        dst = self._resolve_key(record.target)
        key = (src, dst, record.sentence)
        if self.dedup_mentions and key in self._mentions:
            return ApplyOutcome.MERGED
        return self._add_edge(src, dst, "Mention",
                              {"Mention_Sentence": PropertyValue.text(record.sentence)},
                              on_create=lambda: self._mentions.add(key))

    def _apply_relation(self, record: IngestRecord) -> ApplyOutcome:
        src = self._resolve_key(record.src)
        dst = self._resolve_key(record.dst)
        props = dict(record.properties)
        bucket = self._relations.setdefault((src, dst, record.rel_type), [])
        if any(existing == props for existing in bucket):
            return ApplyOutcome.MERGED
        return self._add_edge(src, dst, record.rel_type, props,
                              on_create=lambda: bucket.append(props))

    def _add_edge(self, src, dst, rel_type, props, on_create) -> ApplyOutcome:
        probe = Relationship(self.graph.rel_count(), rel_type, src, dst, dict(props))
        violations = validate_relationship(self.schema, self.graph, probe)
        error_count = self._count_violations(violations)
        if self.strict and error_count:
            return ApplyOutcome.REJECTED
        self.graph.add_relationship(src, dst, rel_type, props)
        self.stats.edges_created += 1
        on_create()
        return ApplyOutcome.CREATED

    def ingest_lines(self, lines) -> IngestStats:
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line:
                continue
            self.stats.records_read += 1
            try:
                record = parse_record(line, lineno)
                self.apply_record(record)
            except (RecordError, DanglingReference) as exc:
                log.warning("skipping line %d: %s", lineno, exc)
                self.stats.errors += 1
        return self.stats


def ingest_file(graph: Graph, schema: SchemaDef, path, strict: bool = False,
                dedup_mentions: bool = False) -> IngestStats:
    ingestor = Ingestor(graph, schema, strict=strict, dedup_mentions=dedup_mentions)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return ingestor.ingest_lines(fh)
    except OSError as exc:
        raise IoFailure(f"cannot read corpus {path}: {exc}") from exc


def enrich_locations(graph: Graph, source) -> int:
    """Fill missing wikidata_description on Location nodes.

    ``source`` is a mapping name -> description, or any object with a
    ``describe(name) -> Optional[str]`` method (e.g. WikidataClient).
    Existing descriptions are never overwritten.
    """
    describe = source.describe if hasattr(source, "describe") else source.get
    enriched = 0
    for node_id in graph.nodes_by_label("Location"):
        node = graph.nodes[node_id]
        if "wikidata_description" in node.properties:
            continue
        name = node.properties.get("Name")
        if name is None:
            continue
        try:
            description = describe(name.value)
        except Exception as exc:  # network errors are logged, never fatal
            log.warning("enrichment failed for %r: %s", name.value, exc)
            continue
        if description is None:
            continue
        graph.set_node_property(node_id, "wikidata_description",
                                PropertyValue.text(description))
        enriched += 1
    return enriched
