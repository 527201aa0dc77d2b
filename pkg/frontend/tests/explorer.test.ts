/** Component tests against a mocked API using frozen wire fixtures. */
import { describe, expect, it } from "vitest";

import { Store } from "../src/controller.js";
import { renderCanvas, renderNlqPreview, renderTable } from "../src/render.js";
import { PRESETS } from "../src/state.js";
import type { QueryResponse } from "../src/types.js";
import { findAll, mockedClient, MemoryStorage } from "./helpers.js";

import queryFixture from "./fixtures/flagship_query_response.json";
import nlqFixture from "./fixtures/flagship_nlq_response.json";
import neighborsFixture from "./fixtures/neighbors_response.json";

const flagship = queryFixture as unknown as QueryResponse;

function storeWithFixtures() {
  return new Store(mockedClient([
    { method: "POST", path: /^\/api\/query$/, status: 200, body: queryFixture },
    { method: "POST", path: /^\/api\/nlq$/, status: 200, body: nlqFixture },
    { method: "GET", path: /^\/api\/nodes\/0\/neighbors/, status: 200, body: neighborsFixture },
    {
      method: "GET", path: /^\/api\/nodes\/\d+\/neighbors/, status: 404,
      body: { code: "bad_request", message: "no node" },
    },
  ]), new MemoryStorage());
}

describe("result table", () => {
  it("renders the four flagship columns and every row", async () => {
    const store = storeWithFixtures();
    await store.runQuery(PRESETS[0].text);

    const tree = renderTable(store.current.lastResponse);
    const headers = findAll(tree, (n) => n.tag === "th").map((n) => n.text);
    expect(headers).toEqual(["PaperTitle", "Location", "WeatherEvent", "Context"]);
    const bodyRows = findAll(tree, (n) => n.tag === "tbody")[0].children;
    expect(bodyRows.length).toBe(flagship.rows.length);
    const firstRow = bodyRows[0].children.map((n) => n.text);
    expect(firstRow).toEqual(flagship.rows[0]);
    // fixture is complete, so no truncation badge
    expect(findAll(tree, (n) => n.attrs.class?.includes("badge") ?? false)).toEqual([]);
  });

  it("shows a 0-rows placeholder for an empty result", () => {
    const empty: QueryResponse = {
      columns: ["x"], rows: [],
      subgraph: { nodes: [], edges: [] },
      stats: { rows_total: 0, truncated: false, elapsed_ms: 0.1 },
    };
    const tree = renderTable(empty);
    expect(tree.text).toBe("0 rows");
  });

  it("surfaces truncation as a visible badge", () => {
    const truncated: QueryResponse = {
      ...flagship,
      stats: { rows_total: 9999, truncated: true, elapsed_ms: 1 },
    };
    const badges = findAll(renderTable(truncated),
      (n) => n.attrs.class === "badge badge-truncated");
    expect(badges.length).toBe(1);
    expect(badges[0].text).toContain("9999");
  });
});

describe("subgraph canvas", () => {
  it("renders exactly the response subgraph, nothing invented", async () => {
    const store = storeWithFixtures();
    await store.runQuery(PRESETS[0].text);

    const svg = renderCanvas(store.current.rendered, null);
    const nodeIds = findAll(svg, (n) => n.attrs["data-node-id"] !== undefined)
      .map((n) => Number(n.attrs["data-node-id"])).sort((a, b) => a - b);
    const edgeIds = findAll(svg, (n) => n.attrs["data-edge-id"] !== undefined)
      .map((n) => Number(n.attrs["data-edge-id"])).sort((a, b) => a - b);
    expect(nodeIds).toEqual(flagship.subgraph.nodes.map((n) => n.id));
    expect(edgeIds).toEqual(flagship.subgraph.edges.map((e) => e.id));
  });

  it("expand merges neighbors without duplicating ids and pins the origin", async () => {
    const store = storeWithFixtures();
    await store.runQuery(PRESETS[0].text);
    const before = store.current.rendered.nodes.size;

    await store.expandNode(0);
    await store.expandNode(0); // expanding twice must be idempotent
    const rendered = store.current.rendered;

    const responseIds = new Set<number>(flagship.subgraph.nodes.map((n) => n.id));
    for (const node of neighborsFixture.nodes) responseIds.add(node.id);
    expect([...rendered.nodes.keys()].sort((a, b) => a - b))
      .toEqual([...responseIds].sort((a, b) => a - b));
    expect(rendered.nodes.size).toBeGreaterThan(before);
    expect(rendered.nodes.get(0)!.pinned).toBe(true);

    const svg = renderCanvas(rendered, null);
    const drawnIds = findAll(svg, (n) => n.attrs["data-node-id"] !== undefined)
      .map((n) => n.attrs["data-node-id"]);
    expect(new Set(drawnIds).size).toBe(drawnIds.length);
  });

  it("marks a node stale when expansion 404s", async () => {
    const store = storeWithFixtures();
    await store.runQuery(PRESETS[0].text);
    await store.expandNode(9);
    expect(store.current.rendered.nodes.get(9)!.stale).toBe(true);
  });
});

describe("natural-language preview", () => {
  it("shows the canonical translated query before execution", async () => {
    const store = storeWithFixtures();
    await store.previewQuestion(
      "Which papers mention cold air outbreaks (CAOs) or warm waves (WWs) " +
      "in relation to North America, in the sentences where these terms appear?");

    expect(store.current.lastResponse).toBeNull(); // nothing ran yet
    const tree = renderNlqPreview(store.current.nlqPreview);
    const shown = findAll(tree, (n) => n.attrs.class === "nlq-cypher")[0];
    expect(shown.text).toBe(nlqFixture.cypher);
    expect(shown.text).toContain(
      'MATCH (we:Weather_Event)-[:TargetsLocation]->(l:Location {Name: "NORTH_AMERICA"})');
  });

  it("runs the confirmed preview and yields the fixture rows", async () => {
    const store = storeWithFixtures();
    await store.previewQuestion("papers mentioning CAOs near North America in sentences");
    await store.runPreview();
    expect(store.current.nlqPreview).toBeNull();
    expect(store.current.lastResponse!.rows).toEqual(flagship.rows);
  });

  it("lists NoMatch reasons", () => {
    const tree = renderNlqPreview({ matched: false, reasons: ["T1: no trigger"] });
    const items = findAll(tree, (n) => n.tag === "li").map((n) => n.text);
    expect(items).toEqual(["T1: no trigger"]);
  });
});

describe("errors and state preservation", () => {
  it("keeps editor text and rendered graph on a query error", async () => {
    const store = new Store(mockedClient([
      { method: "POST", path: /^\/api\/query$/, status: 200, body: queryFixture },
    ]), new MemoryStorage());
    await store.runQuery(PRESETS[0].text);

    const failing = new Store(mockedClient([
      {
        method: "POST", path: /^\/api\/query$/, status: 400,
        body: { code: "parse_error", message: "expected RETURN", offset: 7 },
      },
    ]), new MemoryStorage());
    await failing.runQuery("MATCH (p:Paper");
    expect(failing.current.lastError!.offset).toBe(7);
    expect(failing.current.queryText).toBe("MATCH (p:Paper");
  });

  it("raises the offline banner on network failure, preserving state", async () => {
    const store = new Store(mockedClient([]), new MemoryStorage());
    await store.runQuery("MATCH (p:Paper) RETURN p.title");
    expect(store.current.networkDown).toBe(true);
    expect(store.current.queryText).toBe("MATCH (p:Paper) RETURN p.title");
  });
});

describe("saved queries", () => {
  it("persists user entries but never presets", async () => {
    const storage = new MemoryStorage();
    const store = new Store(mockedClient([]), storage);
    store.dispatch({ type: "SAVE_QUERY", name: "mine", text: "MATCH (p:Paper) RETURN p.title" });

    const reopened = new Store(mockedClient([]), storage);
    const names = reopened.current.saved.map((q) => q.name);
    expect(names).toContain("mine");
    expect(reopened.current.saved.filter((q) => q.preset).length).toBe(PRESETS.length);

    store.dispatch({ type: "DELETE_SAVED", name: "mine" });
    const afterDelete = new Store(mockedClient([]), storage);
    expect(afterDelete.current.saved.map((q) => q.name)).not.toContain("mine");
  });
});
