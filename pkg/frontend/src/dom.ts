/** Element-tree to real-DOM translation used by the browser entry point. */
import type { VNode } from "./render.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SVG_TAGS = new Set(["svg", "g", "circle", "line", "text"]);

export function mount(vnode: VNode, doc: Document): Element {
  const element = SVG_TAGS.has(vnode.tag)
    ? doc.createElementNS(SVG_NS, vnode.tag)
    : doc.createElement(vnode.tag);
  for (const [key, value] of Object.entries(vnode.attrs)) {
    element.setAttribute(key, value);
  }
  if (vnode.text !== undefined) {
    element.textContent = vnode.text;
  }
  for (const child of vnode.children) {
    element.appendChild(mount(child, doc));
  }
  return element;
}

export function replaceContent(target: Element, vnode: VNode): void {
  target.replaceChildren(mount(vnode, target.ownerDocument));
}
