/** Browser bootstrap: one session against the server that served this page. */

import { ExplorerSession } from "./state.js";
import { renderApp } from "./render.js";
import type { QpJson, ViewState } from "./types.js";

const TRIANGLE_QP: QpJson = {
  order: 8,
  quiver: {
    vertices: ["1", "2", "3"],
    arrows: [
      { id: "a", tail: "1", head: "2" },
      { id: "b", tail: "2", head: "3" },
      { id: "c", tail: "3", head: "1" },
    ],
  },
  potential: { order: 8, terms: [{ path: ["c", "b", "a"], coeff: "1" }], cyclic: true },
};

function download(filename: string, content: string): void {
  const blob = new Blob([content], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app container");
  }
  const session = new ExplorerSession(window.location.origin);

  const handlers = {
    onVertex(id: string): void {
      void session.clickVertex(id).then(draw);
    },
    onHistory(node: number): void {
      void session.checkoutHistory(node).then(draw);
    },
    onExport(): void {
      const { filename, content } = session.exportCurrent();
      download(filename, content);
    },
  };

  function draw(view: ViewState): void {
    renderApp(root as HTMLElement, view, handlers);
  }

  draw(await session.loadSession(TRIANGLE_QP));
}

void boot();
