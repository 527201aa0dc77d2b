/** Thin fetch wrapper over the graph service endpoints. */
import type {
  ApiError,
  NeighborsResponse,
  NlqResponse,
  QueryResponse,
} from "./types.js";

export class RequestFailed extends Error {
  constructor(public status: number, public detail: ApiError) {
    super(`${detail.code}: ${detail.message}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  async query(text: string, limit?: number): Promise<QueryResponse> {
    const body: Record<string, unknown> = { query: text };
    if (limit !== undefined) body.limit = limit;
    return this.post("/api/query", JSON.stringify(body), "application/json");
  }

  async nlq(text: string): Promise<NlqResponse> {
    return this.post("/api/nlq", JSON.stringify({ text }), "application/json");
  }

  async neighbors(
    id: number,
    direction: "out" | "in" | "both" = "both",
    type?: string,
  ): Promise<NeighborsResponse> {
    const params = new URLSearchParams({ direction });
    if (type !== undefined) params.set("type", type);
    return this.getJson(`/api/nodes/${id}/neighbors?${params}`);
  }

  async node(id: number) {
    return this.getJson(`/api/nodes/${id}`);
  }

  async health() {
    return this.getJson("/health");
  }

  private async getJson(path: string) {
    const response = await this.fetchFn(this.baseUrl + path);
    return this.unwrap(response);
  }

  private async post(path: string, body: string, contentType: string) {
    const response = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": contentType },
      body,
    });
    return this.unwrap(response);
  }

  private async unwrap(response: Response) {
    const payload = await response.json();
    if (!response.ok) {
      throw new RequestFailed(response.status, payload as ApiError);
    }
    return payload;
  }
}
