/** View state and its reducer.
 *
 * Every rendered element id originated from an API response: the reducer
 * only ever adds nodes and edges carried by QUERY_OK or EXPAND_OK actions,
 * so the canvas can never invent graph data.
 */
import type {
  ApiError,
  EdgePayload,
  NlqResponse,
  NodePayload,
  QueryResponse,
  SavedQuery,
} from "./types.js";

export interface RenderedNode {
  payload: NodePayload;
  x: number;
  y: number;
  pinned: boolean;
  stale: boolean;
}

export interface RenderedGraph {
  nodes: Map<number, RenderedNode>;
  edges: Map<number, EdgePayload>;
}

export type Selection =
  | { kind: "node"; id: number }
  | { kind: "edge"; id: number }
  | null;

export interface ViewState {
  queryText: string;
  inFlight: boolean;
  lastResponse: QueryResponse | null;
  lastError: ApiError | null;
  networkDown: boolean;
  rendered: RenderedGraph;
  selection: Selection;
  nlqPreview: NlqResponse | null;
  saved: SavedQuery[];
}

export type Action =
  | { type: "EDIT"; text: string }
  | { type: "QUERY_STARTED" }
  | { type: "QUERY_OK"; response: QueryResponse }
  | { type: "QUERY_ERROR"; error: ApiError }
  | { type: "NETWORK_ERROR" }
  | { type: "EXPAND_OK"; id: number; nodes: NodePayload[]; edges: EdgePayload[] }
  | { type: "EXPAND_STALE"; id: number }
  | { type: "SELECT"; selection: Selection }
  | { type: "NLQ_PREVIEW"; response: NlqResponse }
  | { type: "NLQ_DISMISS" }
  | { type: "SAVE_QUERY"; name: string; text: string }
  | { type: "DELETE_SAVED"; name: string };

export const PRESETS: SavedQuery[] = [
  {
    name: "Extreme-event mentions near North America",
    text:
      'MATCH (we:Weather_Event)-[:TargetsLocation]->(l:Location {Name: "NORTH_AMERICA"})\n' +
      "MATCH (p:Paper)-[m:Mention]->(we)\n" +
      'WHERE m.Mention_Sentence CONTAINS "WW" OR m.Mention_Sentence CONTAINS "CAOs"\n' +
      "RETURN p.title AS PaperTitle, l.Name AS Location, we.Name AS WeatherEvent, " +
      "m.Mention_Sentence AS Context",
    preset: true,
  },
  {
    name: "CMIP5 models and the NAO over the Southeast US",
    text:
      "MATCH (p:Paper)-[:Mention]->(mod:Model|Project)\n" +
      'WHERE mod.Name CONTAINS "CMIP5"\n' +
      'MATCH (p)-[:Mention]->(tel:Teleconnection {Name: "NORTH_ATLANTIC_OSCILLATION"})\n' +
      "MATCH (p)-[:Mention]->(loc:Location)\n" +
      'WHERE loc.Name CONTAINS "Southeast" AND (loc.wikidata_description CONTAINS "United States" OR loc.Name CONTAINS "US")\n' +
      "RETURN p.title AS PaperTitle, mod.Name AS ModelProject, tel.Name AS Teleconnection, loc.Name AS Region",
    preset: true,
  },
  {
    name: "PNA pattern targeting United States locations",
    text:
      'MATCH (p:Paper)-[:Mention]->(t:Teleconnection {Name: "PACIFIC_NORTH_AMERICAN_PNA_PATTERN"})\n' +
      "MATCH (t)-[:TargetsLocation]->(l:Location)\n" +
      "MATCH (p)-[:Mention]->(l)\n" +
      'WHERE l.wikidata_description CONTAINS "United States" OR l.Name IN ["USA", "United States of America"]\n' +
      "RETURN p.title AS PaperTitle, t.Name AS TeleconnectionPattern, l.Name AS Location",
    preset: true,
  },
];

export function initialState(saved: SavedQuery[] = []): ViewState {
  return {
    queryText: PRESETS[0].text,
    inFlight: false,
    lastResponse: null,
    lastError: null,
    networkDown: false,
    rendered: { nodes: new Map(), edges: new Map() },
    selection: null,
    nlqPreview: null,
    saved: [...PRESETS, ...saved.filter((q) => !q.preset)],
  };
}

/** Seed coordinates on a circle; the layout pass refines them later. */
function seedPosition(id: number, index: number, count: number) {
  const angle = (2 * Math.PI * index) / Math.max(count, 1);
  const radius = 120 + (id % 5) * 18;
  return { x: 300 + radius * Math.cos(angle), y: 220 + radius * Math.sin(angle) };
}

function mergeElements(
  rendered: RenderedGraph,
  nodes: NodePayload[],
  edges: EdgePayload[],
): RenderedGraph {
  const next: RenderedGraph = {
    nodes: new Map(rendered.nodes),
    edges: new Map(rendered.edges),
  };
  nodes.forEach((payload, index) => {
    const existing = next.nodes.get(payload.id);
    if (existing) {
      // payload may carry fresher properties; keep position and flags
      next.nodes.set(payload.id, { ...existing, payload });
      return;
    }
    const { x, y } = seedPosition(payload.id, index, nodes.length);
    next.nodes.set(payload.id, { payload, x, y, pinned: false, stale: false });
  });
  for (const edge of edges) {
    // an edge may reference nodes outside the delivered set only if they
    // are already rendered; otherwise it is dropped to keep the invariant
    if (next.nodes.has(edge.src) && next.nodes.has(edge.dst)) {
      next.edges.set(edge.id, edge);
    }
  }
  return next;
}

function selectionStillRendered(selection: Selection, rendered: RenderedGraph): Selection {
  if (selection === null) return null;
  const alive =
    selection.kind === "node"
      ? rendered.nodes.has(selection.id)
      : rendered.edges.has(selection.id);
  return alive ? selection : null;
}

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "EDIT":
      return { ...state, queryText: action.text };
    case "QUERY_STARTED":
      return { ...state, inFlight: true, networkDown: false };
    case "QUERY_OK": {
      const rendered = mergeElements(
        { nodes: new Map(), edges: new Map() },
        action.response.subgraph.nodes,
        action.response.subgraph.edges,
      );
      return {
        ...state,
        inFlight: false,
        lastResponse: action.response,
        lastError: null,
        rendered,
        selection: null,
      };
    }
    case "QUERY_ERROR":
      // editor content and rendered graph are preserved on failure
      return { ...state, inFlight: false, lastError: action.error };
    case "NETWORK_ERROR":
      return { ...state, inFlight: false, networkDown: true };
    case "EXPAND_OK": {
      const rendered = mergeElements(state.rendered, action.nodes, action.edges);
      const origin = rendered.nodes.get(action.id);
      if (origin) rendered.nodes.set(action.id, { ...origin, pinned: true });
      return { ...state, rendered };
    }
    case "EXPAND_STALE": {
      const node = state.rendered.nodes.get(action.id);
      if (!node) return state;
      const nodes = new Map(state.rendered.nodes);
      nodes.set(action.id, { ...node, stale: true });
      return { ...state, rendered: { nodes, edges: state.rendered.edges } };
    }
    case "SELECT":
      return {
        ...state,
        selection: selectionStillRendered(action.selection, state.rendered),
      };
    case "NLQ_PREVIEW":
      return { ...state, nlqPreview: action.response };
    case "NLQ_DISMISS":
      return { ...state, nlqPreview: null };
    case "SAVE_QUERY": {
      const entry: SavedQuery = { name: action.name, text: action.text, preset: false };
      const saved = state.saved.filter((q) => q.name !== action.name).concat(entry);
      return { ...state, saved };
    }
    case "DELETE_SAVED":
      return {
        ...state,
        saved: state.saved.filter((q) => q.preset || q.name !== action.name),
      };
  }
}

// -- browser-local persistence of user-added queries -------------------------

const STORAGE_KEY = "climakg.savedQueries";

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export function loadSavedQueries(storage: StorageLike): SavedQuery[] {
  try {
    const raw = storage.getItem(STORAGE_KEY);
    if (!raw) return [];
    const parsed = JSON.parse(raw);
    if (!Array.isArray(parsed)) return [];
    return parsed.filter(
      (q): q is SavedQuery =>
        typeof q === "object" && q !== null &&
        typeof q.name === "string" && typeof q.text === "string",
    ).map((q) => ({ ...q, preset: false }));
  } catch {
    return [];
  }
}

export function storeSavedQueries(storage: StorageLike, saved: SavedQuery[]): void {
  const user = saved.filter((q) => !q.preset);
  storage.setItem(STORAGE_KEY, JSON.stringify(user));
}
