/** Goal rendering: turn the server's flat span list into nested DOM spans.
 *
 * Every subterm becomes a <span data-path="..."> element wrapping exactly
 * the characters the server reported for it, so the innermost span under a
 * click is simply the event target, and focus styling covers exactly the
 * server-reported range.
 */

import type { Span } from "./api.js";

type SpanNode = Span & { children: SpanNode[] };

/** Nest spans by range containment; the root covers the whole string. */
export function buildSpanTree(spans: Span[]): SpanNode {
  const sorted = [...spans].sort(
    (a, b) => a.start - b.start || b.end - a.end || a.path.length - b.path.length,
  );
  const root: SpanNode = { ...sorted[0], children: [] };
  const stack: SpanNode[] = [root];
  for (const span of sorted.slice(1)) {
    const node: SpanNode = { ...span, children: [] };
    while (
      stack.length > 1 &&
      !(span.start >= stack[stack.length - 1].start && span.end <= stack[stack.length - 1].end)
    ) {
      stack.pop();
    }
    stack[stack.length - 1].children.push(node);
    stack.push(node);
  }
  return root;
}

export function renderGoal(
  doc: Document,
  goal: string,
  spans: Span[],
  focusPath: string,
): HTMLElement {
  const emit = (node: SpanNode): HTMLElement => {
    const el = doc.createElement("span");
    el.dataset.path = node.path;
    el.className = node.path === focusPath ? "term focus" : "term";
    let cursor = node.start;
    for (const child of node.children) {
      if (child.start > cursor) {
        el.appendChild(doc.createTextNode(goal.slice(cursor, child.start)));
      }
      el.appendChild(emit(child));
      cursor = child.end;
    }
    if (cursor < node.end) {
      el.appendChild(doc.createTextNode(goal.slice(cursor, node.end)));
    }
    return el;
  };
  return emit(buildSpanTree(spans));
}
