"""Versioned binary snapshot format for graphs.

Layout (all integers little-endian):

    magic "CKG1" (4 bytes)
    format version, u16 (currently 1)
    four length-prefixed sections, each "u32 byte-length" + payload:
      1. string table:  u32 count, then per string u32 byte-length + UTF-8 bytes
      2. node table:    u32 count, then per node
                          u64 id
                          u16 label count, u32 string index each
                          u16 property count, properties (below)
      3. rel table:     u32 count, then per relationship
                          u64 id, u32 type string index, u64 src, u64 dst
                          u16 property count, properties
      4. indexed keys:  u32 count, u32 string index each

    property: u32 key string index, then value
    value:    u8 tag, then payload
              0 text      u32 string index
              1 int       i64
              2 real      f64
              3 bool      u8 (0/1)
              4 text list u32 count, u32 string index each

Node and relationship records appear in ascending id order; ids are dense,
so load reconstructs the exact same id assignment.
"""
from __future__ import annotations

import struct
from typing import Dict, List

from .store import Graph
from .values import PropertyValue, ValueKind

MAGIC = b"CKG1"
FORMAT_VERSION = 1

_TAG_TEXT = 0
_TAG_INT = 1
_TAG_REAL = 2
_TAG_BOOL = 3
_TAG_TEXT_LIST = 4


class SnapshotError(Exception):
    pass


class IoFailure(SnapshotError):
    pass


class FormatVersionMismatch(SnapshotError):
    pass


class CorruptSnapshot(SnapshotError):
    def __init__(self, offset: int, message: str):
        super().__init__(f"corrupt snapshot at byte {offset}: {message}")
        self.offset = offset


class _StringTable:
    def __init__(self):
        self._index: Dict[str, int] = {}
        self.strings: List[str] = []

    def intern(self, s: str) -> int:
        idx = self._index.get(s)
        if idx is None:
            idx = len(self.strings)
            self._index[s] = idx
            self.strings.append(s)
        return idx


def _encode_value(value: PropertyValue, strings: _StringTable) -> bytes:
    if value.kind is ValueKind.TEXT:
        return struct.pack("<BI", _TAG_TEXT, strings.intern(value.value))
    if value.kind is ValueKind.INT:
        return struct.pack("<Bq", _TAG_INT, value.value)
    if value.kind is ValueKind.REAL:
        return struct.pack("<Bd", _TAG_REAL, value.value)
    if value.kind is ValueKind.BOOL:
        return struct.pack("<BB", _TAG_BOOL, 1 if value.value else 0)
    parts = [struct.pack("<BI", _TAG_TEXT_LIST, len(value.value))]
    parts.extend(struct.pack("<I", strings.intern(s)) for s in value.value)
    return b"".join(parts)


def _encode_props(props: Dict[str, PropertyValue], strings: _StringTable) -> bytes:
    parts = [struct.pack("<H", len(props))]
    for key, value in props.items():
        parts.append(struct.pack("<I", strings.intern(key)))
        parts.append(_encode_value(value, strings))
    return b"".join(parts)


def snapshot_bytes(graph: Graph) -> bytes:
    strings = _StringTable()
    node_parts = [struct.pack("<I", len(graph.nodes))]
    for node in graph.nodes:
        labels = sorted(node.labels)
        node_parts.append(struct.pack("<QH", node.id, len(labels)))
        node_parts.extend(struct.pack("<I", strings.intern(l)) for l in labels)
        node_parts.append(_encode_props(node.properties, strings))
    rel_parts = [struct.pack("<I", len(graph.rels))]
    for rel in graph.rels:
        rel_parts.append(struct.pack("<QIQQ", rel.id, strings.intern(rel.rel_type),
                                     rel.src, rel.dst))
        rel_parts.append(_encode_props(rel.properties, strings))
    key_parts = [struct.pack("<I", len(graph.indexed_keys))]
    key_parts.extend(struct.pack("<I", strings.intern(k)) for k in graph.indexed_keys)

    string_parts = [struct.pack("<I", len(strings.strings))]
    for s in strings.strings:
        data = s.encode("utf-8")
        string_parts.append(struct.pack("<I", len(data)))
        string_parts.append(data)

    out = [MAGIC, struct.pack("<H", FORMAT_VERSION)]
    for section in (string_parts, node_parts, rel_parts, key_parts):
        payload = b"".join(section)
        out.append(struct.pack("<I", len(payload)))
        out.append(payload)
    return b"".join(out)


def snapshot_save(graph: Graph, path) -> int:
    data = snapshot_bytes(graph)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise IoFailure(f"cannot write snapshot {path}: {exc}") from exc
    return len(data)


class _Reader:
    def __init__(self, data: bytes, base: int = 0):
        self.data = data
        self.pos = 0
        self.base = base  # absolute offset of data[0] in the file

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise CorruptSnapshot(self.base + self.pos, "truncated record")
        values = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return values if len(values) > 1 else values[0]

    def take_bytes(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise CorruptSnapshot(self.base + self.pos, "truncated record")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk


def _decode_value(reader: _Reader, strings: List[str]) -> PropertyValue:
    tag = reader.take("<B")
    if tag == _TAG_TEXT:
        return PropertyValue.text(_string_at(reader, strings))
    if tag == _TAG_INT:
        return PropertyValue.integer(reader.take("<q"))
    if tag == _TAG_REAL:
        return PropertyValue.real(reader.take("<d"))
    if tag == _TAG_BOOL:
        return PropertyValue.boolean(bool(reader.take("<B")))
    if tag == _TAG_TEXT_LIST:
        count = reader.take("<I")
        return PropertyValue.text_list(_string_at(reader, strings) for _ in range(count))
    raise CorruptSnapshot(reader.base + reader.pos - 1, f"unknown value tag {tag}")


def _string_at(reader: _Reader, strings: List[str]) -> str:
    idx = reader.take("<I")
    if idx >= len(strings):
        raise CorruptSnapshot(reader.base + reader.pos - 4, f"string index {idx} out of range")
    return strings[idx]


def _decode_props(reader: _Reader, strings: List[str]) -> Dict[str, PropertyValue]:
    count = reader.take("<H")
    props = {}
    for _ in range(count):
        key = _string_at(reader, strings)
        props[key] = _decode_value(reader, strings)
    return props


def snapshot_load(path) -> Graph:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read snapshot {path}: {exc}") from exc
    return snapshot_from_bytes(data)


def snapshot_from_bytes(data: bytes) -> Graph:
    if len(data) < 6 or data[:4] != MAGIC:
        raise CorruptSnapshot(0, "bad magic")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(f"unsupported snapshot version {version}")

    sections = []
    pos = 6
    for _ in range(4):
        if pos + 4 > len(data):
            raise CorruptSnapshot(pos, "missing section header")
        (length,) = struct.unpack_from("<I", data, pos)
        pos += 4
        if pos + length > len(data):
            raise CorruptSnapshot(pos, "section extends past end of file")
        sections.append(_Reader(data[pos:pos + length], base=pos))
        pos += length
    if pos != len(data):
        raise CorruptSnapshot(pos, "trailing bytes after final section")

    str_reader, node_reader, rel_reader, key_reader = sections

    strings: List[str] = []
    for _ in range(str_reader.take("<I")):
        length = str_reader.take("<I")
        raw = str_reader.take_bytes(length)
        try:
            strings.append(raw.decode("utf-8"))
        except UnicodeDecodeError:
            raise CorruptSnapshot(str_reader.base + str_reader.pos - length,
                                  "invalid UTF-8 in string table")

    indexed_keys = [_string_at(key_reader, strings)
                    for _ in range(key_reader.take("<I"))]

    graph = Graph(indexed_keys)
    node_count = node_reader.take("<I")
    for expected_id in range(node_count):
        node_id, label_count = node_reader.take("<QH")
        if node_id != expected_id:
            raise CorruptSnapshot(node_reader.base + node_reader.pos,
                                  f"node id {node_id} out of order")
        labels = [_string_at(node_reader, strings) for _ in range(label_count)]
        props = _decode_props(node_reader, strings)
        graph.add_node(labels, props)

    rel_count = rel_reader.take("<I")
    for expected_id in range(rel_count):
        rel_id, type_idx, src, dst = rel_reader.take("<QIQQ")
        if rel_id != expected_id:
            raise CorruptSnapshot(rel_reader.base + rel_reader.pos,
                                  f"relationship id {rel_id} out of order")
        if type_idx >= len(strings):
            raise CorruptSnapshot(rel_reader.base + rel_reader.pos,
                                  f"string index {type_idx} out of range")
        props = _decode_props(rel_reader, strings)
        if src >= node_count or dst >= node_count:
            raise CorruptSnapshot(rel_reader.base + rel_reader.pos,
                                  f"relationship endpoint {max(src, dst)} out of range")
        graph.add_relationship(src, dst, strings[type_idx], props)
    return graph
