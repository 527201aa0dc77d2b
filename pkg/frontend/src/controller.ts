/** Async operations bridging the API client and the state reducer.
 *
 * A Store owns the single ViewState and funnels every change through
 * reduce(), including concurrent node expansions.
 */
import { ApiClient, RequestFailed } from "./api.js";
import {
  Action,
  ViewState,
  initialState,
  loadSavedQueries,
  reduce,
  storeSavedQueries,
  StorageLike,
} from "./state.js";

export class Store {
  private state: ViewState;
  private listeners: Array<(state: ViewState) => void> = [];

  constructor(
    private api: ApiClient,
    private storage: StorageLike | null = null,
  ) {
    const saved = storage ? loadSavedQueries(storage) : [];
    this.state = initialState(saved);
  }

  get current(): ViewState {
    return this.state;
  }

  subscribe(listener: (state: ViewState) => void): void {
    this.listeners.push(listener);
  }

  dispatch(action: Action): void {
    this.state = reduce(this.state, action);
    if (this.storage && (action.type === "SAVE_QUERY" || action.type === "DELETE_SAVED")) {
      storeSavedQueries(this.storage, this.state.saved);
    }
    for (const listener of this.listeners) listener(this.state);
  }

  /** POST the editor text; at most one query is in flight at a time. */
  async runQuery(text: string = this.state.queryText): Promise<void> {
    if (this.state.inFlight) return;
    this.dispatch({ type: "EDIT", text });
    this.dispatch({ type: "QUERY_STARTED" });
    try {
      const response = await this.api.query(text);
      this.dispatch({ type: "QUERY_OK", response });
    } catch (err) {
      if (err instanceof RequestFailed) {
        this.dispatch({ type: "QUERY_ERROR", error: err.detail });
      } else {
        this.dispatch({ type: "NETWORK_ERROR" });
      }
    }
  }

  async expandNode(
    id: number,
    direction: "out" | "in" | "both" = "both",
    type?: string,
  ): Promise<void> {
    if (!this.state.rendered.nodes.has(id)) return;
    try {
      const { nodes, edges } = await this.api.neighbors(id, direction, type);
      this.dispatch({ type: "EXPAND_OK", id, nodes, edges });
    } catch (err) {
      if (err instanceof RequestFailed && err.status === 404) {
        this.dispatch({ type: "EXPAND_STALE", id });
      } else {
        this.dispatch({ type: "NETWORK_ERROR" });
      }
    }
  }

  /** Translate a question and surface the preview; never auto-executes. */
  async previewQuestion(text: string): Promise<void> {
    try {
      const response = await this.api.nlq(text);
      this.dispatch({ type: "NLQ_PREVIEW", response });
    } catch (err) {
      if (err instanceof RequestFailed) {
        this.dispatch({ type: "QUERY_ERROR", error: err.detail });
      } else {
        this.dispatch({ type: "NETWORK_ERROR" });
      }
    }
  }

  /** Execute a previously previewed translation. */
  async runPreview(): Promise<void> {
    const preview = this.state.nlqPreview;
    if (preview === null || !preview.matched) return;
    this.dispatch({ type: "NLQ_DISMISS" });
    await this.runQuery(preview.cypher);
  }
}
