// DOM board: one clickable div per cell, row/column swap headers, and
// class-based highlights.  Repaints are diffed per cell; full rebuilds
// happen only when the board geometry changes, so big boards (n >= 60)
// stay responsive during run animations.

import type { Battle, Board, LineRef } from "./geometry.js";
import { cellsOfLine, key } from "./geometry.js";

export type CellColor = "black" | "white" | null;

export interface BoardCallbacks {
  onCellClick(i: number, j: number, current: CellColor): void;
  onLineClick(line: LineRef): void;
  onLineHover(line: LineRef | null): void;
}

// Next /toggle color for the empty -> black -> white -> empty cycle.
// Toggling white on a white cell removes it, closing the loop.
export function cycleColor(current: CellColor): "black" | "white" {
  return current === null ? "black" : "white";
}

export class BoardView {
  private board: Board | null = null;
  private cells = new Map<string, HTMLElement>();
  private colors = new Map<string, CellColor>();
  private highlighted: string[] = [];
  private witnessed: string[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: BoardCallbacks,
  ) {}

  setBoard(board: Board): void {
    if (
      this.board &&
      this.board.n === board.n &&
      this.board.topology === board.topology
    ) {
      return;
    }
    this.board = board;
    this.cells.clear();
    this.colors.clear();
    this.highlighted = [];
    this.witnessed = [];
    this.root.textContent = "";
    this.root.style.setProperty("--n", String(board.n));

    const corner = document.createElement("div");
    corner.className = "corner";
    this.root.appendChild(corner);
    for (let j = 1; j <= board.n; j++) {
      this.root.appendChild(this.header({ kind: "col", index: j }, `c${j}`));
    }
    for (let i = 1; i <= board.n; i++) {
      this.root.appendChild(this.header({ kind: "row", index: i }, `r${i}`));
      for (let j = 1; j <= board.n; j++) {
        const cell = document.createElement("div");
        cell.className = "cell empty";
        cell.dataset.cell = key(i, j);
        cell.addEventListener("click", () =>
          this.callbacks.onCellClick(i, j, this.colors.get(key(i, j)) ?? null),
        );
        this.cells.set(key(i, j), cell);
        this.colors.set(key(i, j), null);
        this.root.appendChild(cell);
      }
    }
  }

  private header(line: LineRef, label: string): HTMLElement {
    const el = document.createElement("button");
    el.className = "line-header";
    el.textContent = label;
    el.title = `swap on ${line.kind} ${line.index}`;
    el.addEventListener("click", () => this.callbacks.onLineClick(line));
    el.addEventListener("mouseenter", () => this.callbacks.onLineHover(line));
    el.addEventListener("mouseleave", () => this.callbacks.onLineHover(null));
    return el;
  }

  // Diffed repaint: only cells whose color changed get touched.
  update(battle: Battle): number {
    if (!this.board) return 0;
    let touched = 0;
    for (const [k, el] of this.cells) {
      const next: CellColor = battle.black.has(k)
        ? "black"
        : battle.white.has(k)
          ? "white"
          : null;
      if (this.colors.get(k) === next) continue;
      this.colors.set(k, next);
      el.classList.remove("black", "white", "empty");
      el.classList.add(next ?? "empty");
      touched++;
    }
    return touched;
  }

  colorAt(i: number, j: number): CellColor {
    return this.colors.get(key(i, j)) ?? null;
  }

  // Torus wrap shows up by itself: the line's cells are highlighted
  // individually, so a wrapped diagonal paints as split segments.
  highlightLine(line: LineRef | null): void {
    for (const k of this.highlighted) {
      this.cells.get(k)?.classList.remove("hl");
    }
    this.highlighted = [];
    if (!line || !this.board) return;
    for (const [i, j] of cellsOfLine(this.board, line)) {
      const k = key(i, j);
      this.cells.get(k)?.classList.add("hl");
      this.highlighted.push(k);
    }
  }

  showWitness(
    line: LineRef,
    black: [number, number],
    white: [number, number],
  ): void {
    this.clearWitness();
    this.highlightLine(line);
    for (const [cell, cls] of [
      [black, "witness-black"],
      [white, "witness-white"],
    ] as const) {
      const k = key(cell[0], cell[1]);
      this.cells.get(k)?.classList.add(cls);
      this.witnessed.push(k);
    }
  }

  clearWitness(): void {
    for (const k of this.witnessed) {
      this.cells
        .get(k)
        ?.classList.remove("witness-black", "witness-white");
    }
    this.witnessed = [];
    this.highlightLine(null);
  }
}
