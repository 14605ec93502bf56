/**
 * Layered line diagrams for concept lattices.
 *
 * The server ships order-theoretic structure only (concepts, cover edges,
 * layer depths); this module computes x-coordinates with a two-sweep
 * barycenter pass and renders SVG. No lattice mathematics happens here.
 * Attribute labels sit above their node, object labels below, and labels
 * without a comparison shape (view names) are drawn boxed.
 */

import type { ConceptPayload, LatticePayload } from "./types.js";

export interface DiagramNode {
  id: number;
  x: number;
  y: number;
  layer: number;
  concept: ConceptPayload;
}

export interface DiagramModel {
  nodes: DiagramNode[];
  edges: [number, number][];
  width: number;
  height: number;
}

export interface DiagramOptions {
  width?: number;
  layerGap?: number;
  margin?: number;
  onSelect?: (kind: "object" | "attribute", name: string) => void;
  highlight?: Set<string>;
}

export function conceptKey(c: ConceptPayload): string {
  return JSON.stringify([c.extent, c.intent]);
}

function checkPayload(payload: LatticePayload): string | null {
  if (!payload || !Array.isArray(payload.concepts) || !Array.isArray(payload.covers)) {
    return "payload must carry concepts and covers";
  }
  const n = payload.concepts.length;
  for (const edge of payload.covers) {
    if (!Array.isArray(edge) || edge.length !== 2) return "covers must be index pairs";
    const [lo, hi] = edge;
    if (!Number.isInteger(lo) || !Number.isInteger(hi)) return "cover indexes must be integers";
    if (lo < 0 || lo >= n || hi < 0 || hi >= n) return `cover edge [${lo}, ${hi}] is out of range`;
  }
  for (const c of payload.concepts) {
    if (!Array.isArray(c.extent) || !Array.isArray(c.intent)) {
      return "every concept needs an extent and an intent";
    }
    if (typeof c.layer !== "number") return "every concept needs a layer depth";
  }
  for (const [lo, hi] of payload.covers) {
    if (payload.concepts[lo].layer <= payload.concepts[hi].layer) {
      return "layering violates cover direction";
    }
  }
  return null;
}

/** Two-sweep barycenter placement; deterministic for a fixed payload. */
export function layoutDiagram(payload: LatticePayload, width = 720): DiagramModel {
  const problem = checkPayload(payload);
  if (problem !== null) {
    throw new Error(problem);
  }
  const concepts = payload.concepts;
  const layers = new Map<number, number[]>();
  concepts.forEach((c, i) => {
    const bucket = layers.get(c.layer) ?? [];
    bucket.push(i);
    layers.set(c.layer, bucket);
  });
  const depths = [...layers.keys()].sort((a, b) => a - b);

  const up = new Map<number, number[]>();
  const down = new Map<number, number[]>();
  for (const [lo, hi] of payload.covers) {
    up.set(lo, [...(up.get(lo) ?? []), hi]);
    down.set(hi, [...(down.get(hi) ?? []), lo]);
  }

  const position = new Map<number, number>();
  for (const d of depths) {
    layers.get(d)!.forEach((node, idx) => position.set(node, idx));
  }

  const reorder = (d: number, neighbors: Map<number, number[]>) => {
    const row = layers.get(d)!;
    const scores = new Map<number, number>();
    for (const node of row) {
      const adj = neighbors.get(node) ?? [];
      const known = adj.filter((n) => position.has(n));
      scores.set(
        node,
        known.length
          ? known.reduce((acc, n) => acc + position.get(n)!, 0) / known.length
          : position.get(node)!,
      );
    }
    row.sort((a, b) => scores.get(a)! - scores.get(b)! || a - b);
    row.forEach((node, idx) => position.set(node, idx));
  };

  for (const d of depths.slice(1)) reorder(d, up); // sweep away from the top
  for (const d of [...depths].reverse().slice(1)) reorder(d, down); // and back

  const layerGap = 110;
  const margin = 60;
  const height = margin * 2 + layerGap * Math.max(depths.length - 1, 0);
  const nodes: DiagramNode[] = concepts.map((c, i) => {
    const row = layers.get(c.layer)!;
    const slot = row.indexOf(i);
    const step = (width - margin * 2) / Math.max(row.length, 1);
    return {
      id: i,
      x: margin + step * (slot + 0.5),
      y: margin + layerGap * depths.indexOf(c.layer),
      layer: c.layer,
      concept: c,
    };
  });
  return { nodes, edges: payload.covers.map(([a, b]) => [a, b]), width, height };
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgText(
  x: number,
  y: number,
  content: string,
  cls: string,
): SVGTextElement {
  const el = document.createElementNS(SVG_NS, "text");
  el.setAttribute("x", String(x));
  el.setAttribute("y", String(y));
  el.setAttribute("class", cls);
  el.textContent = content;
  return el;
}

function isViewLabel(label: string): boolean {
  return !label.includes("=") && !label.includes("<=");
}

/**
 * Render a lattice payload into the container. Returns the layout model;
 * a malformed payload produces an error banner instead of throwing.
 */
export function renderLattice(
  container: HTMLElement,
  payload: LatticePayload,
  options: DiagramOptions = {},
): DiagramModel | null {
  container.replaceChildren();
  let model: DiagramModel;
  try {
    model = layoutDiagram(payload, options.width ?? 720);
  } catch (err) {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = `cannot draw lattice: ${(err as Error).message}`;
    container.append(banner);
    return null;
  }

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);
  svg.setAttribute("class", "lattice");

  for (const [lo, hi] of model.edges) {
    const a = model.nodes[lo];
    const b = model.nodes[hi];
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("class", "cover-edge");
    svg.append(line);
  }

  for (const node of model.nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "concept-node");
    const key = conceptKey(node.concept);
    if (options.highlight?.has(key)) {
      group.classList.add("shared");
    }
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", "7");
    circle.setAttribute("data-node", String(node.id));
    group.append(circle);

    node.concept.attribute_labels.forEach((label, i) => {
      const text = svgText(
        node.x + 10,
        node.y - 8 - 14 * (node.concept.attribute_labels.length - 1 - i),
        label,
        isViewLabel(label) ? "attr-label view-label" : "attr-label",
      );
      text.addEventListener("click", () => options.onSelect?.("attribute", label));
      group.append(text);
    });
    node.concept.object_labels.forEach((label, i) => {
      const text = svgText(node.x + 10, node.y + 16 + 14 * i, label, "obj-label");
      text.addEventListener("click", () => options.onSelect?.("object", label));
      group.append(text);
    });
    circle.addEventListener("click", () => {
      const c = node.concept;
      if (c.object_labels.length > 0) options.onSelect?.("object", c.object_labels[0]);
      else if (c.attribute_labels.length > 0)
        options.onSelect?.("attribute", c.attribute_labels[0]);
    });
    svg.append(group);
  }
  container.append(svg);
  return model;
}
