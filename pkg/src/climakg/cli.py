"""Command-line entry point.

Subcommands: ingest, query, repl, export-dot, serve. Exit codes: 0 success,
1 user or query error, 2 environment error (I/O, port binding).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import engine
from .cypher import ParseError
from .ingest import IoFailure, ingest_file
from .schema import SchemaDef, builtin_climate_schema, load_schema, serialize_schema
from .service import DEFAULT_PORT, ServerState, create_app
from .snapshot import SnapshotError, snapshot_load, snapshot_save
from .store import Graph

EXIT_OK = 0
EXIT_USER = 1
EXIT_ENV = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="climakg",
                                     description="climate knowledge-graph engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load an NDJSON corpus into a snapshot")
    p_ingest.add_argument("--corpus", required=True)
    p_ingest.add_argument("--schema")
    p_ingest.add_argument("--snapshot-out")
    p_ingest.add_argument("--strict", action="store_true")
    p_ingest.add_argument("--dedup-mentions", action="store_true")

    for name, help_text in (("query", "run one query against a snapshot or corpus"),
                            ("export-dot", "emit the result subgraph in DOT form")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--snapshot")
        p.add_argument("--corpus")
        p.add_argument("--schema")
        p.add_argument("--query")
        p.add_argument("--query-file")
        if name == "query":
            p.add_argument("--format", choices=("table", "ndjson"), default="table")

    p_repl = sub.add_parser("repl", help="interactive query loop")
    p_repl.add_argument("--snapshot")
    p_repl.add_argument("--corpus")
    p_repl.add_argument("--schema")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--snapshot")
    p_serve.add_argument("--corpus")
    p_serve.add_argument("--schema")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_serve.add_argument("--writable", action="store_true")

    return parser


def _load_schema_arg(path: Optional[str]) -> SchemaDef:
    if path is None:
        return builtin_climate_schema()
    with open(path, "r", encoding="utf-8") as fh:
        return load_schema(fh.read())


def _load_graph(args, schema: SchemaDef) -> Graph:
    if args.snapshot:
        return snapshot_load(args.snapshot)
    graph = Graph()
    if args.corpus:
        ingest_file(graph, schema, args.corpus)
    return graph


def _query_text(args) -> str:
    if args.query:
        return args.query
    if args.query_file:
        with open(args.query_file, "r", encoding="utf-8") as fh:
            return fh.read()
    raise SystemExit("one of --query or --query-file is required")


def _render_value(value) -> str:
    if value is None:
        return "null"
    raw = value.to_json()
    return json.dumps(raw) if isinstance(raw, list) else str(raw)


def render_table(table: engine.ResultTable) -> str:
    cells = [[_render_value(v) for v in row] for row in table.rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells])
              for i, c in enumerate(table.columns)]
    def line(parts):
        return " | ".join(part.ljust(width) for part, width in zip(parts, widths)).rstrip()
    out = [line(table.columns), "-+-".join("-" * w for w in widths)]
    out.extend(line(row) for row in cells)
    return "\n".join(out)


def render_ndjson(table: engine.ResultTable) -> str:
    lines = []
    for row in table.rows:
        obj = {col: (v.to_json() if v is not None else None)
               for col, v in zip(table.columns, row)}
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "\n".join(lines)


def render_dot(graph: Graph, table: engine.ResultTable) -> str:
    lines = ["digraph result {"]
    for nid in sorted(table.subgraph_nodes):
        node = graph.nodes[nid]
        label = ":".join(sorted(node.labels))
        name = node.properties.get("Name") or node.properties.get("title")
        if name is not None:
            label += "\\n" + name.value
        lines.append(f'  n{nid} [label="{label}"];')
    for rid in sorted(table.subgraph_rels):
        rel = graph.rels[rid]
        lines.append(f'  n{rel.src} -> n{rel.dst} [label="{rel.rel_type}"];')
    lines.append("}")
    return "\n".join(lines)


def _print_query_error(exc: Exception, query: str) -> None:
    if isinstance(exc, ParseError):
        line_start = query.rfind("\n", 0, exc.offset) + 1
        line = query[line_start:].split("\n", 1)[0]
        caret = " " * (exc.offset - line_start) + "^"
        print(f"query error: {exc}\n  {line}\n  {caret}", file=sys.stderr)
    else:
        print(f"query error: {exc}", file=sys.stderr)


def cmd_ingest(args) -> int:
    schema = _load_schema_arg(args.schema)
    graph = Graph()
    try:
        stats = ingest_file(graph, schema, args.corpus, strict=args.strict,
                            dedup_mentions=args.dedup_mentions)
    except IoFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    if args.snapshot_out:
        try:
            snapshot_save(graph, args.snapshot_out)
        except SnapshotError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_ENV
    print(json.dumps(stats.to_json(), indent=2))
    return EXIT_USER if args.strict and stats.errors else EXIT_OK


def cmd_query(args) -> int:
    schema = _load_schema_arg(args.schema)
    try:
        graph = _load_graph(args, schema)
    except (SnapshotError, IoFailure) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    query = _query_text(args)
    try:
        table = engine.run_query(query, graph)
    except (ParseError, engine.PlanError) as exc:
        _print_query_error(exc, query)
        return EXIT_USER
    print(render_table(table) if args.format == "table" else render_ndjson(table))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    schema = _load_schema_arg(args.schema)
    try:
        graph = _load_graph(args, schema)
    except (SnapshotError, IoFailure) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    query = _query_text(args)
    try:
        table = engine.run_query(query, graph)
    except (ParseError, engine.PlanError) as exc:
        _print_query_error(exc, query)
        return EXIT_USER
    print(render_dot(graph, table))
    return EXIT_OK


def cmd_repl(args) -> int:
    schema = _load_schema_arg(args.schema)
    try:
        graph = _load_graph(args, schema)
    except (SnapshotError, IoFailure) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    print(f"climakg repl: {graph.node_count()} nodes, {graph.rel_count()} edges. "
          ":schema shows the schema, :quit exits.")
    for raw in sys.stdin:
        line = raw.strip()
        if not line:
            continue
        if line == ":quit":
            break
        if line == ":schema":
            print(serialize_schema(schema), end="")
            continue
        try:
            table = engine.run_query(line, graph)
        except (ParseError, engine.PlanError) as exc:
            _print_query_error(exc, line)
            continue
        print(render_table(table))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    schema = _load_schema_arg(args.schema)
    try:
        graph = _load_graph(args, schema)
    except (SnapshotError, IoFailure) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    state = ServerState(graph, schema, writable=args.writable,
                        snapshot_loaded=bool(args.snapshot))
    app = create_app(state)
    try:
        uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"cannot serve on port {args.port}: {exc}", file=sys.stderr)
        return EXIT_ENV
    return EXIT_OK


_COMMANDS = {
    "ingest": cmd_ingest,
    "query": cmd_query,
    "export-dot": cmd_export_dot,
    "repl": cmd_repl,
    "serve": cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
