// Page bootstrap: binds the static panels in index.html to an Explorer.

import { SessionApi } from "./api.js";
import { parseBoardFile } from "./boardfile.js";
import { Explorer, loadBoardFile } from "./controls.js";
import type { LineKind, Topology } from "./geometry.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

function numberOrUndefined(input: HTMLInputElement): number | undefined {
  return input.value.trim() === "" ? undefined : Number(input.value);
}

async function boot(): Promise<void> {
  // the page is usually served next to the API; ?api=http://host:port
  // points it at a service on another origin
  const apiBase = new URLSearchParams(location.search).get("api") ?? "";
  const api = new SessionApi(apiBase);
  const boardRoot = el<HTMLElement>("board");
  const els = {
    counters: el<HTMLElement>("counters"),
    status: el<HTMLElement>("status"),
    message: el<HTMLElement>("message"),
  };

  let explorer = await Explorer.create(api, "torus", 13, boardRoot, els);

  el<HTMLButtonElement>("new-board").addEventListener("click", async () => {
    const topology = el<HTMLSelectElement>("topology").value as Topology;
    const n = Number(el<HTMLInputElement>("size").value);
    await explorer.dispose();
    explorer = await Explorer.create(api, topology, n, boardRoot, els);
  });

  // diag/skew picker: rows and columns have headers on the board, the
  // wrapping lines are reached from here
  const lineKind = el<HTMLSelectElement>("line-kind");
  const lineIndex = el<HTMLInputElement>("line-index");
  const pickedLine = () => ({
    kind: lineKind.value as LineKind,
    index: Number(lineIndex.value),
  });
  const preview = () => {
    try {
      explorer.view.highlightLine(pickedLine());
    } catch {
      explorer.view.highlightLine(null); // off-board index while typing
    }
  };
  lineKind.addEventListener("change", preview);
  lineIndex.addEventListener("input", preview);
  el<HTMLButtonElement>("swap-line").addEventListener("click", () => {
    void explorer.swap(pickedLine());
  });

  el<HTMLButtonElement>("run").addEventListener("click", () => {
    void explorer.run({
      target: Number(el<HTMLInputElement>("target").value),
      seed: numberOrUndefined(el<HTMLInputElement>("seed")),
      budget: numberOrUndefined(el<HTMLInputElement>("budget")),
      restarts: numberOrUndefined(el<HTMLInputElement>("restarts")),
    });
  });
  el<HTMLButtonElement>("step").addEventListener("click", () => {
    void explorer.step();
  });
  el<HTMLButtonElement>("stop").addEventListener("click", () => {
    void explorer.stop();
  });

  el<HTMLInputElement>("import").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const parsed = parseBoardFile(await file.text());
      explorer = await loadBoardFile(api, parsed, boardRoot, els, explorer);
    } catch (error) {
      els.message.textContent = String(error);
    } finally {
      input.value = "";
    }
  });

  el<HTMLButtonElement>("export").addEventListener("click", () => {
    const blob = new Blob([explorer.exportBoardFile()], {
      type: "text/plain",
    });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `${explorer.board.topology}-${explorer.board.n}.board`;
    a.click();
    URL.revokeObjectURL(a.href);
  });
}

document.addEventListener("DOMContentLoaded", () => {
  void boot();
});
