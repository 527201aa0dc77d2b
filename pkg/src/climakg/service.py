"""HTTP API over a published graph.

Endpoints:

    POST /api/query               {query, limit?} -> result table + subgraph
    GET  /api/schema              schema registry as JSON
    GET  /api/nodes/{id}          node detail
    GET  /api/nodes/{id}/neighbors?direction=&type=
    POST /api/ingest?strict=      NDJSON body (writable mode only)
    POST /api/nlq                 {text} -> translation preview or no-match
    GET  /health

Readers always see a complete graph: ingestion applies records to a copy
and swaps the shared reference in atomically on completion.
"""
from __future__ import annotations

import json
import threading
import time
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import engine, nlq
from .cypher import ParseError, parse
from .cypher.printer import pretty_print
from .ingest import Ingestor
from .schema import SchemaDef, builtin_climate_schema, schema_to_json
from .store import Direction, Graph, UnknownNode

DEFAULT_PORT = 8628
DEFAULT_ROW_LIMIT = 1000


class ServerState:
    def __init__(self, graph: Optional[Graph] = None,
                 schema: Optional[SchemaDef] = None, writable: bool = False,
                 snapshot_loaded: bool = False,
                 external_translator: Optional[nlq.ExternalTranslator] = None):
        self.graph = graph if graph is not None else Graph()
        self.schema = schema if schema is not None else builtin_climate_schema()
        self.writable = writable
        self.snapshot_loaded = snapshot_loaded
        self.external_translator = external_translator
        self.templates = nlq.builtin_templates()
        self._swap_lock = threading.Lock()

    def swap_graph(self, graph: Graph) -> None:
        with self._swap_lock:
            self.graph = graph


def _error(status: int, code: str, message: str, offset: Optional[int] = None):
    body = {"code": code, "message": message}
    if offset is not None:
        body["offset"] = offset
    return JSONResponse(status_code=status, content=body)


def _node_payload(graph: Graph, node_id: int) -> dict:
    node = graph.nodes[node_id]
    return {
        "id": node.id,
        "labels": sorted(node.labels),
        "properties": {k: v.to_json() for k, v in node.properties.items()},
    }


def _edge_payload(graph: Graph, rel_id: int) -> dict:
    rel = graph.rels[rel_id]
    return {
        "id": rel.id,
        "type": rel.rel_type,
        "src": rel.src,
        "dst": rel.dst,
        "properties": {k: v.to_json() for k, v in rel.properties.items()},
    }


def create_app(state: Optional[ServerState] = None) -> FastAPI:
    state = state if state is not None else ServerState()
    app = FastAPI(title="climakg", docs_url=None, redoc_url=None)
    app.state.climakg = state
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    @app.post("/api/query")
    async def api_query(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or not isinstance(body.get("query"), str):
            return _error(400, "bad_request", "body must be {query, limit?}")
        limit = body.get("limit", DEFAULT_ROW_LIMIT)
        if not isinstance(limit, int) or isinstance(limit, bool) or limit < 1:
            return _error(400, "bad_request", "limit must be a positive integer")
        graph = state.graph  # one read: queries never see a partial swap
        started = time.perf_counter()
        try:
            table = engine.run_query(body["query"], graph)
        except ParseError as exc:
            code = "unsupported_feature" if "not a supported feature" in exc.expected \
                else "parse_error"
            return _error(400, code, str(exc), offset=exc.offset)
        except engine.PlanError as exc:
            return _error(400, "plan_error", str(exc))
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        rows_total = len(table.rows)
        rows = table.rows[:limit]
        return {
            "columns": table.columns,
            "rows": [[v.to_json() if v is not None else None for v in row]
                     for row in rows],
            "subgraph": {
                "nodes": [_node_payload(graph, nid)
                          for nid in sorted(table.subgraph_nodes)],
                "edges": [_edge_payload(graph, rid)
                          for rid in sorted(table.subgraph_rels)],
            },
            "stats": {
                "rows_total": rows_total,
                "truncated": rows_total > limit,
                "elapsed_ms": elapsed_ms,
            },
        }

    @app.get("/api/schema")
    def api_schema():
        return Response(
            content=json.dumps(schema_to_json(state.schema), sort_keys=True, indent=2),
            media_type="application/json",
        )

    @app.get("/api/nodes/{node_id}")
    def api_node(node_id: int):
        graph = state.graph
        if not graph.has_node(node_id):
            return _error(404, "bad_request", f"no node with id {node_id}")
        return _node_payload(graph, node_id)

    @app.get("/api/nodes/{node_id}/neighbors")
    def api_neighbors(node_id: int, direction: str = "both",
                      type: Optional[str] = None):
        graph = state.graph
        if not graph.has_node(node_id):
            return _error(404, "bad_request", f"no node with id {node_id}")
        try:
            dir_value = Direction(direction.lower())
        except ValueError:
            return _error(400, "bad_request",
                          f"direction must be out, in or both, not {direction!r}")
        pairs = graph.neighbors(node_id, dir_value, type)
        return {
            "nodes": [_node_payload(graph, other) for _, other in pairs],
            "edges": [_edge_payload(graph, rid) for rid, _ in pairs],
        }

    @app.post("/api/ingest")
    async def api_ingest(request: Request, strict: bool = False):
        if not state.writable:
            return _error(409, "bad_request", "server is read-only; restart with --writable")
        body = (await request.body()).decode("utf-8")
        staging = state.graph.copy()
        ingestor = Ingestor(staging, state.schema, strict=strict)
        stats = ingestor.ingest_lines(body.splitlines())
        state.swap_graph(staging)
        return stats.to_json()

    @app.post("/api/nlq")
    async def api_nlq(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or not isinstance(body.get("text"), str):
            return _error(400, "bad_request", "body must be {text}")
        graph = state.graph
        result = nlq.translate(body["text"], state.templates, graph)
        if isinstance(result, nlq.Translation):
            return {"matched": True, "template_id": result.template_id,
                    "slots": result.slots, "cypher": result.text}
        if state.external_translator is not None:
            raw = state.external_translator(body["text"])
            try:
                ast = parse(raw)
            except ParseError as exc:
                return _error(400, "parse_error",
                              f"external translator produced invalid Cypher: {exc}",
                              offset=exc.offset)
            return {"matched": True, "template_id": "external", "slots": {},
                    "cypher": pretty_print(ast)}
        return {"matched": False, "reasons": list(result.reasons)}

    @app.get("/health")
    def health():
        graph = state.graph
        return {"status": "ok", "nodes": graph.node_count(),
                "edges": graph.rel_count(),
                "snapshot_loaded": state.snapshot_loaded}

    return app
