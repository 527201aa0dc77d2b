/** Pure view builders: state in, a lightweight element tree out.
 *
 * Keeping render output as plain data makes component tests independent of
 * a browser; `mount` in dom.ts turns trees into real elements.
 */
import type { RenderedGraph, Selection, ViewState } from "./state.js";
import type { ApiError, JsonValue, NlqResponse, QueryResponse } from "./types.js";

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: VNode[];
  text?: string;
}

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  children: VNode[] = [],
  text?: string,
): VNode {
  return { tag, attrs, children, text };
}

function cellText(value: JsonValue): string {
  if (value === null) return "null";
  if (Array.isArray(value)) return JSON.stringify(value);
  return String(value);
}

export function renderTable(response: QueryResponse | null): VNode {
  if (response === null) {
    return el("div", { class: "table-empty" }, [], "Run a query to see rows.");
  }
  if (response.rows.length === 0) {
    return el("div", { class: "table-empty" }, [], "0 rows");
  }
  const head = el("tr", {}, response.columns.map((c) =>
    el("th", { class: "col-header" }, [], c)));
  const body = response.rows.map((row) =>
    el("tr", {}, row.map((v) => el("td", {}, [], cellText(v)))));
  const table = el("table", { class: "results" }, [
    el("thead", {}, [head]),
    el("tbody", {}, body),
  ]);
  const children = [table];
  if (response.stats.truncated) {
    children.push(el("span", { class: "badge badge-truncated" }, [],
      `showing ${response.rows.length} of ${response.stats.rows_total} rows`));
  }
  return el("div", { class: "table-wrap" }, children);
}

const LABEL_PALETTE: Record<string, string> = {
  Paper: "#4c78a8",
  Weather_Event: "#e45756",
  Teleconnection: "#f58518",
  Model: "#72b7b2",
  Project: "#54a24b",
  Location: "#b279a2",
};

const FALLBACK_PALETTE = ["#9d755d", "#bab0ac", "#d67195", "#86bcb6"];

export function labelColor(labels: string[]): string {
  for (const label of labels) {
    const color = LABEL_PALETTE[label];
    if (color) return color;
  }
  const key = labels[0] ?? "";
  let hash = 0;
  for (const ch of key) hash = (hash * 31 + ch.charCodeAt(0)) >>> 0;
  return FALLBACK_PALETTE[hash % FALLBACK_PALETTE.length];
}

function nodeCaption(labels: string[], properties: Record<string, JsonValue>): string {
  const name = properties.Name ?? properties.title;
  return typeof name === "string" ? name : labels.join(":");
}

export function renderCanvas(rendered: RenderedGraph, selection: Selection): VNode {
  const edges = [...rendered.edges.values()].map((edge) => {
    const a = rendered.nodes.get(edge.src)!;
    const b = rendered.nodes.get(edge.dst)!;
    const selected = selection?.kind === "edge" && selection.id === edge.id;
    return el("g", { class: "edge", "data-edge-id": String(edge.id) }, [
      el("line", {
        x1: a.x.toFixed(1), y1: a.y.toFixed(1),
        x2: b.x.toFixed(1), y2: b.y.toFixed(1),
        stroke: selected ? "#222" : "#aaa",
      }),
      el("text", {
        x: ((a.x + b.x) / 2).toFixed(1),
        y: ((a.y + b.y) / 2).toFixed(1),
        class: "edge-label",
      }, [], edge.type),
    ]);
  });
  const nodes = [...rendered.nodes.values()].map((node) => {
    const selected = selection?.kind === "node" && selection.id === node.payload.id;
    const classes = ["node"];
    if (node.pinned) classes.push("pinned");
    if (node.stale) classes.push("stale");
    if (selected) classes.push("selected");
    return el("g", {
      class: classes.join(" "),
      "data-node-id": String(node.payload.id),
    }, [
      el("circle", {
        cx: node.x.toFixed(1), cy: node.y.toFixed(1), r: "14",
        fill: labelColor(node.payload.labels),
        stroke: selected ? "#111" : "#fff",
      }),
      el("text", {
        x: node.x.toFixed(1), y: (node.y + 26).toFixed(1), class: "node-label",
      }, [], nodeCaption(node.payload.labels, node.payload.properties)),
    ]);
  });
  return el("svg", {
    class: "canvas", viewBox: "0 0 640 440",
    width: "640", height: "440",
  }, [...edges, ...nodes]);
}

/** Query text with the error position marked for the editor underlay. */
export function renderErrorAnnotation(queryText: string, error: ApiError | null): VNode {
  if (error === null) return el("div", { class: "error-bar hidden" });
  const children = [el("span", { class: "error-message" }, [], error.message)];
  if (error.offset !== undefined) {
    const lineStart = queryText.lastIndexOf("\n", error.offset - 1) + 1;
    let lineEnd = queryText.indexOf("\n", error.offset);
    if (lineEnd === -1) lineEnd = queryText.length;
    const caret = " ".repeat(Math.max(error.offset - lineStart, 0)) + "^";
    children.push(el("pre", { class: "error-context" }, [],
      queryText.slice(lineStart, lineEnd) + "\n" + caret));
  }
  return el("div", { class: "error-bar" }, children);
}

export function renderNlqPreview(preview: NlqResponse | null): VNode {
  if (preview === null) return el("div", { class: "nlq-preview hidden" });
  if (!preview.matched) {
    return el("div", { class: "nlq-preview nomatch" }, [
      el("p", {}, [], "No template matched:"),
      el("ul", {}, preview.reasons.map((r) => el("li", {}, [], r))),
    ]);
  }
  return el("div", { class: "nlq-preview" }, [
    el("p", {}, [], `Matched template ${preview.template_id}. Review before running:`),
    el("pre", { class: "nlq-cypher" }, [], preview.cypher),
    el("button", { class: "nlq-run" }, [], "Run this query"),
    el("button", { class: "nlq-dismiss" }, [], "Dismiss"),
  ]);
}

export function renderStatusBar(state: ViewState): VNode {
  if (state.networkDown) {
    return el("div", { class: "status-bar offline" }, [],
      "Cannot reach the graph service. Your query text is preserved.");
  }
  if (state.inFlight) {
    return el("div", { class: "status-bar busy" }, [], "Running…");
  }
  if (state.lastResponse) {
    const s = state.lastResponse.stats;
    return el("div", { class: "status-bar" }, [],
      `${s.rows_total} rows in ${s.elapsed_ms.toFixed(1)} ms`);
  }
  return el("div", { class: "status-bar" }, [], "Ready");
}
