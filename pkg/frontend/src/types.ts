/** Wire types matching the graph service HTTP contract. */

export type JsonValue = string | number | boolean | string[] | null;

export interface NodePayload {
  id: number;
  labels: string[];
  properties: Record<string, JsonValue>;
}

export interface EdgePayload {
  id: number;
  type: string;
  src: number;
  dst: number;
  properties: Record<string, JsonValue>;
}

export interface QueryResponse {
  columns: string[];
  rows: JsonValue[][];
  subgraph: { nodes: NodePayload[]; edges: EdgePayload[] };
  stats: { rows_total: number; truncated: boolean; elapsed_ms: number };
}

export interface ApiError {
  code: string;
  message: string;
  offset?: number;
}

export interface NeighborsResponse {
  nodes: NodePayload[];
  edges: EdgePayload[];
}

export interface NlqMatch {
  matched: true;
  template_id: string;
  slots: Record<string, unknown>;
  cypher: string;
}

export interface NlqNoMatch {
  matched: false;
  reasons: string[];
}

export type NlqResponse = NlqMatch | NlqNoMatch;

export interface SavedQuery {
  name: string;
  text: string;
  preset: boolean;
}
