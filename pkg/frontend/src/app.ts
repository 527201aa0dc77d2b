/** Browser entry point: wires the store to the static page in index.html. */
import { ApiClient } from "./api.js";
import { Store } from "./controller.js";
import { replaceContent } from "./dom.js";
import { layout } from "./layout.js";
import {
  renderCanvas,
  renderErrorAnnotation,
  renderNlqPreview,
  renderStatusBar,
  renderTable,
} from "./render.js";
import type { ViewState } from "./state.js";

async function apiBase(): Promise<string> {
  try {
    const response = await fetch("./config.json");
    if (response.ok) {
      const config = await response.json();
      if (typeof config.apiBase === "string") return config.apiBase;
    }
  } catch {
    // fall through to the default
  }
  return "http://127.0.0.1:8628";
}

function byId(id: string): HTMLElement {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id} in index.html`);
  return element;
}

export async function start(): Promise<void> {
  const store = new Store(new ApiClient(await apiBase()), window.localStorage);

  const editor = byId("editor") as HTMLTextAreaElement;
  const nlqInput = byId("nlq-input") as HTMLInputElement;
  const presetList = byId("presets");

  function redraw(state: ViewState): void {
    layout(state.rendered, { width: 640, height: 440 });
    replaceContent(byId("table"), renderTable(state.lastResponse));
    replaceContent(byId("graph"), renderCanvas(state.rendered, state.selection));
    replaceContent(byId("errors"), renderErrorAnnotation(state.queryText, state.lastError));
    replaceContent(byId("nlq-preview"), renderNlqPreview(state.nlqPreview));
    replaceContent(byId("status"), renderStatusBar(state));

    presetList.replaceChildren(
      ...state.saved.map((query) => {
        const item = document.createElement("li");
        const button = document.createElement("button");
        button.textContent = query.name;
        button.addEventListener("click", () => {
          editor.value = query.text;
          void store.runQuery(query.text);
        });
        item.appendChild(button);
        if (!query.preset) {
          const remove = document.createElement("button");
          remove.textContent = "×";
          remove.className = "delete-saved";
          remove.addEventListener("click", () =>
            store.dispatch({ type: "DELETE_SAVED", name: query.name }));
          item.appendChild(remove);
        }
        return item;
      }),
    );
  }

  store.subscribe(redraw);

  byId("run").addEventListener("click", () => void store.runQuery(editor.value));
  byId("save").addEventListener("click", () => {
    const name = window.prompt("Name this query:");
    if (name) store.dispatch({ type: "SAVE_QUERY", name, text: editor.value });
  });
  byId("nlq-ask").addEventListener("click", () =>
    void store.previewQuestion(nlqInput.value));

  byId("nlq-preview").addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("nlq-run")) void store.runPreview();
    if (target.classList.contains("nlq-dismiss")) store.dispatch({ type: "NLQ_DISMISS" });
  });

  byId("graph").addEventListener("click", (event) => {
    const group = (event.target as Element).closest("[data-node-id]");
    if (group) {
      const id = Number(group.getAttribute("data-node-id"));
      store.dispatch({ type: "SELECT", selection: { kind: "node", id } });
    }
  });
  byId("graph").addEventListener("dblclick", (event) => {
    const group = (event.target as Element).closest("[data-node-id]");
    if (group) void store.expandNode(Number(group.getAttribute("data-node-id")));
  });

  editor.value = store.current.queryText;
  redraw(store.current);
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  void start();
}
