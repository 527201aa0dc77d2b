/** Small deterministic force layout: spring edges, pairwise repulsion.
 *
 * Runs a fixed number of iterations per call; pinned nodes do not move.
 * Deliberately dependency-free so the client stays a static bundle.
 */
import type { RenderedGraph } from "./state.js";

const ITERATIONS = 60;
const SPRING_LENGTH = 110;
const SPRING_STRENGTH = 0.02;
const REPULSION = 4200;
const CENTER_PULL = 0.005;

export interface LayoutOptions {
  width: number;
  height: number;
}

export function layout(graph: RenderedGraph, options: LayoutOptions): void {
  const nodes = [...graph.nodes.values()];
  const cx = options.width / 2;
  const cy = options.height / 2;

  for (let step = 0; step < ITERATIONS; step += 1) {
    const fx = new Map<number, number>();
    const fy = new Map<number, number>();
    for (const node of nodes) {
      fx.set(node.payload.id, 0);
      fy.set(node.payload.id, 0);
    }

    for (let i = 0; i < nodes.length; i += 1) {
      for (let j = i + 1; j < nodes.length; j += 1) {
        const a = nodes[i];
        const b = nodes[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1) {
          // coincident nodes: nudge apart deterministically by id order
          dx = a.payload.id < b.payload.id ? -1 : 1;
          dy = 0.5;
          d2 = 1.25;
        }
        const force = REPULSION / d2;
        const d = Math.sqrt(d2);
        fx.set(a.payload.id, fx.get(a.payload.id)! + (dx / d) * force);
        fy.set(a.payload.id, fy.get(a.payload.id)! + (dy / d) * force);
        fx.set(b.payload.id, fx.get(b.payload.id)! - (dx / d) * force);
        fy.set(b.payload.id, fy.get(b.payload.id)! - (dy / d) * force);
      }
    }

    for (const edge of graph.edges.values()) {
      const a = graph.nodes.get(edge.src);
      const b = graph.nodes.get(edge.dst);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1);
      const pull = SPRING_STRENGTH * (d - SPRING_LENGTH);
      fx.set(a.payload.id, fx.get(a.payload.id)! + (dx / d) * pull * d);
      fy.set(a.payload.id, fy.get(a.payload.id)! + (dy / d) * pull * d);
      fx.set(b.payload.id, fx.get(b.payload.id)! - (dx / d) * pull * d);
      fy.set(b.payload.id, fy.get(b.payload.id)! - (dy / d) * pull * d);
    }

    const cooling = 1 - step / ITERATIONS;
    for (const node of nodes) {
      if (node.pinned) continue;
      const vx = fx.get(node.payload.id)! + (cx - node.x) * CENTER_PULL * ITERATIONS;
      const vy = fy.get(node.payload.id)! + (cy - node.y) * CENTER_PULL * ITERATIONS;
      node.x += Math.max(-12, Math.min(12, vx * 0.05)) * cooling;
      node.y += Math.max(-12, Math.min(12, vy * 0.05)) * cooling;
      node.x = Math.max(20, Math.min(options.width - 20, node.x));
      node.y = Math.max(20, Math.min(options.height - 20, node.y));
    }
  }
}
