/** Mocked API plumbing shared by the component tests. */
import { ApiClient, FetchLike } from "../src/api.js";
import type { VNode } from "../src/render.js";

export type Route = {
  method: string;
  path: RegExp;
  status: number;
  body: unknown;
};

export function mockFetch(routes: Route[]): FetchLike {
  return async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    for (const route of routes) {
      if (route.method === method && route.path.test(path)) {
        return new Response(JSON.stringify(route.body), {
          status: route.status,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    throw new TypeError(`network error: no route for ${method} ${path}`);
  };
}

export function mockedClient(routes: Route[]): ApiClient {
  return new ApiClient("http://service.test", mockFetch(routes));
}

/** Depth-first search over a rendered element tree. */
export function findAll(root: VNode, pred: (node: VNode) => boolean): VNode[] {
  const hits: VNode[] = [];
  const walk = (node: VNode) => {
    if (pred(node)) hits.push(node);
    node.children.forEach(walk);
  };
  walk(root);
  return hits;
}

export class MemoryStorage {
  private data = new Map<string, string>();

  getItem(key: string): string | null {
    return this.data.get(key) ?? null;
  }

  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }
}
