/** SVG and panel rendering. Wholesale re-render on every view change. */

import type { ViewState } from "./types.js";

export interface Handlers {
  onVertex(id: string): void;
  onHistory(node: number): void;
  onExport(): void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    el.setAttribute(k, v);
  }
  return el;
}

function renderGraph(doc: Document, view: ViewState, handlers: Handlers): SVGSVGElement {
  const { layout } = view;
  const svg = svgEl(doc, "svg", {
    viewBox: `0 0 ${layout.width} ${layout.height}`,
    class: "graph",
  });
  const defs = svgEl(doc, "defs", {});
  const marker = svgEl(doc, "marker", {
    id: "arrowhead",
    viewBox: "0 0 10 10",
    refX: "8",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl(doc, "path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#546" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const group of layout.edges) {
    for (const curve of group.curves) {
      svg.appendChild(
        svgEl(doc, "path", {
          d: curve.d,
          class: "edge",
          fill: "none",
          "marker-end": "url(#arrowhead)",
          "data-arrow": curve.arrowId,
        }),
      );
      const label = svgEl(doc, "text", {
        x: String(curve.labelX),
        y: String(curve.labelY),
        class: "edge-label",
      });
      label.textContent = curve.arrowId;
      svg.appendChild(label);
    }
    if (group.badge !== null) {
      const anchor = group.curves[0];
      const badge = svgEl(doc, "text", {
        x: String(anchor.labelX),
        y: String(anchor.labelY + 16),
        class: "edge-badge",
      });
      badge.textContent = group.badge;
      svg.appendChild(badge);
    }
  }

  for (const vertex of layout.vertices) {
    const g = svgEl(doc, "g", {
      class: vertex.disabled ? "vertex disabled" : "vertex",
      "data-vertex": vertex.id,
    });
    const circle = svgEl(doc, "circle", {
      cx: String(vertex.x),
      cy: String(vertex.y),
      r: "18",
    });
    const label = svgEl(doc, "text", {
      x: String(vertex.x),
      y: String(vertex.y + 5),
      "text-anchor": "middle",
      class: "vertex-label",
    });
    label.textContent = vertex.id;
    g.appendChild(circle);
    g.appendChild(label);
    if (!vertex.disabled) {
      g.addEventListener("click", () => handlers.onVertex(vertex.id));
    }
    if (view.inlineError && view.inlineError.vertex === vertex.id) {
      const err = svgEl(doc, "text", {
        x: String(vertex.x),
        y: String(vertex.y - 26),
        "text-anchor": "middle",
        class: "vertex-error",
      });
      err.textContent = view.inlineError.code;
      g.appendChild(err);
    }
    svg.appendChild(g);
  }
  return svg;
}

function renderPotential(doc: Document, view: ViewState): HTMLElement {
  const panel = doc.createElement("section");
  panel.className = "panel potential";
  const title = doc.createElement("h2");
  title.textContent = `Potential (order ${view.jacobian.order})`;
  panel.appendChild(title);
  if (view.potential.length === 0) {
    const empty = doc.createElement("p");
    empty.textContent = "0";
    panel.appendChild(empty);
  } else {
    const list = doc.createElement("ul");
    for (const line of view.potential) {
      const item = doc.createElement("li");
      item.textContent = `${line.coeff} · ${line.word.join("·")}`;
      list.appendChild(item);
    }
    panel.appendChild(list);
  }
  return panel;
}

function renderJacobian(doc: Document, view: ViewState): HTMLElement {
  const panel = doc.createElement("section");
  panel.className = "panel jacobian";
  const title = doc.createElement("h2");
  title.textContent = "Jacobian dims";
  panel.appendChild(title);
  const dims = doc.createElement("p");
  dims.className = "dims";
  dims.textContent = `[${view.jacobian.dims.join(", ")}]`;
  panel.appendChild(dims);
  const note = doc.createElement("p");
  note.className = "note";
  note.textContent =
    `total ${view.jacobian.total}, trusted below degree ${view.jacobian.trusted_below_degree}`;
  panel.appendChild(note);
  return panel;
}

function renderHistory(doc: Document, view: ViewState, handlers: Handlers): HTMLElement {
  const panel = doc.createElement("section");
  panel.className = "panel history";
  const title = doc.createElement("h2");
  title.textContent = "History";
  panel.appendChild(title);
  const list = doc.createElement("ul");
  for (const entry of view.history) {
    const item = doc.createElement("li");
    item.style.paddingLeft = `${entry.depth * 14}px`;
    const button = doc.createElement("button");
    button.className = entry.selected ? "history-node selected" : "history-node";
    button.dataset.node = String(entry.id);
    button.textContent = entry.vertex === null ? "start" : `μ${entry.vertex}`;
    button.addEventListener("click", () => handlers.onHistory(entry.id));
    item.appendChild(button);
    if (entry.involutionMatch === true) {
      const badge = doc.createElement("span");
      badge.className = "badge ok";
      badge.textContent = "μ² matched";
      item.appendChild(badge);
    } else if (entry.involutionMatch === false) {
      const badge = doc.createElement("span");
      badge.className = "badge bad";
      badge.textContent = "μ² mismatch";
      item.appendChild(badge);
    }
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderApp(root: HTMLElement, view: ViewState, handlers: Handlers): void {
  const doc = root.ownerDocument;
  root.replaceChildren();

  const header = doc.createElement("header");
  const title = doc.createElement("h1");
  title.textContent = "QP mutation explorer";
  header.appendChild(title);
  const session = doc.createElement("span");
  session.className = "session-id";
  session.textContent = `session ${view.sessionId}`;
  header.appendChild(session);
  const exportButton = doc.createElement("button");
  exportButton.id = "export";
  exportButton.textContent = "Export QP JSON";
  exportButton.addEventListener("click", () => handlers.onExport());
  header.appendChild(exportButton);
  root.appendChild(header);

  if (view.inlineError && view.inlineError.vertex === null) {
    const toast = doc.createElement("p");
    toast.className = "toast error";
    toast.textContent = `${view.inlineError.code}: ${view.inlineError.detail}`;
    root.appendChild(toast);
  }

  const main = doc.createElement("main");
  main.appendChild(renderGraph(doc, view, handlers));
  const side = doc.createElement("aside");
  side.appendChild(renderPotential(doc, view));
  side.appendChild(renderJacobian(doc, view));
  side.appendChild(renderHistory(doc, view, handlers));
  main.appendChild(side);
  root.appendChild(main);
}
