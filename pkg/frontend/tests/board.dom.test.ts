// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { BoardView, cycleColor, type BoardCallbacks } from "../src/board.js";
import {
  cellsOfLine,
  key,
  type Board,
  type LineRef,
} from "../src/geometry.js";

const T5: Board = { n: 5, topology: "torus" };

interface Recorded {
  clicks: Array<[number, number, "black" | "white" | null]>;
  lineClicks: LineRef[];
  hovers: Array<LineRef | null>;
}

function setup(board: Board = T5): {
  root: HTMLElement;
  view: BoardView;
  log: Recorded;
} {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const log: Recorded = { clicks: [], lineClicks: [], hovers: [] };
  const callbacks: BoardCallbacks = {
    onCellClick: (i, j, current) => log.clicks.push([i, j, current]),
    onLineClick: (line) => log.lineClicks.push(line),
    onLineHover: (line) => log.hovers.push(line),
  };
  const view = new BoardView(root, callbacks);
  view.setBoard(board);
  return { root, view, log };
}

function cellEl(root: HTMLElement, i: number, j: number): HTMLElement {
  const el = root.querySelector<HTMLElement>(`[data-cell="${key(i, j)}"]`);
  if (!el) throw new Error(`no cell (${i}, ${j})`);
  return el;
}

beforeEach(() => {
  document.body.textContent = "";
});

describe("cycleColor", () => {
  it("walks empty -> black -> white", () => {
    expect(cycleColor(null)).toBe("black");
    expect(cycleColor("black")).toBe("white");
    // toggling white on white clears the cell server-side
    expect(cycleColor("white")).toBe("white");
  });
});

describe("BoardView", () => {
  it("builds n*n cells plus a header per row and column", () => {
    const { root } = setup();
    expect(root.querySelectorAll(".cell")).toHaveLength(25);
    expect(root.querySelectorAll(".line-header")).toHaveLength(10);
    expect(root.style.getPropertyValue("--n")).toBe("5");
  });

  it("keeps the DOM when setBoard repeats the same geometry", () => {
    const { root, view } = setup();
    const before = cellEl(root, 1, 1);
    view.setBoard({ n: 5, topology: "torus" });
    expect(cellEl(root, 1, 1)).toBe(before);
    view.setBoard({ n: 5, topology: "grid" });
    expect(cellEl(root, 1, 1)).not.toBe(before);
  });

  it("repaints only changed cells", () => {
    const { view } = setup();
    const first = {
      black: new Set([key(1, 1), key(2, 3)]),
      white: new Set([key(4, 4)]),
    };
    expect(view.update(first)).toBe(3);
    expect(view.update(first)).toBe(0);
    // move one black queen: one cell cleared, one painted
    const second = {
      black: new Set([key(1, 2), key(2, 3)]),
      white: new Set([key(4, 4)]),
    };
    expect(view.update(second)).toBe(2);
    expect(view.colorAt(1, 1)).toBeNull();
    expect(view.colorAt(1, 2)).toBe("black");
  });

  it("reports the current color on click", () => {
    const { root, view, log } = setup();
    view.update({ black: new Set([key(2, 2)]), white: new Set() });
    cellEl(root, 2, 2).click();
    cellEl(root, 3, 1).click();
    expect(log.clicks).toEqual([
      [2, 2, "black"],
      [3, 1, null],
    ]);
  });

  it("routes header clicks and hovers to line callbacks", () => {
    const { root, log } = setup();
    const headers = root.querySelectorAll<HTMLElement>(".line-header");
    const col2 = headers[1]!; // corner is not a header; order is c1..cn, r1..rn
    expect(col2.textContent).toBe("c2");
    col2.click();
    col2.dispatchEvent(new MouseEvent("mouseenter"));
    col2.dispatchEvent(new MouseEvent("mouseleave"));
    expect(log.lineClicks).toEqual([{ kind: "col", index: 2 }]);
    expect(log.hovers).toEqual([{ kind: "col", index: 2 }, null]);
  });

  it("highlights exactly the line's cells, wrap included", () => {
    const { root, view } = setup();
    const line: LineRef = { kind: "diag", index: 2 };
    view.highlightLine(line);
    const lit = [...root.querySelectorAll<HTMLElement>(".cell.hl")].map(
      (el) => el.dataset.cell,
    );
    const want = cellsOfLine(T5, line).map(([i, j]) => key(i, j));
    expect(lit.sort()).toEqual([...want].sort());
    // the wrapped diagonal is not one contiguous stripe: somewhere the
    // column jumps, so the highlight renders as split segments
    const cols = cellsOfLine(T5, line).map(([, j]) => j);
    const jumps = cols.slice(1).map((c, idx) => c - cols[idx]!);
    expect(jumps.some((d) => d !== 1)).toBe(true);
    view.highlightLine({ kind: "row", index: 1 });
    expect(root.querySelectorAll(".cell.hl")).toHaveLength(5);
    view.highlightLine(null);
    expect(root.querySelectorAll(".cell.hl")).toHaveLength(0);
  });

  it("marks and clears a rejection witness", () => {
    const { root, view } = setup();
    view.showWitness({ kind: "row", index: 2 }, [2, 1], [2, 4]);
    expect(cellEl(root, 2, 1).classList.contains("witness-black")).toBe(true);
    expect(cellEl(root, 2, 4).classList.contains("witness-white")).toBe(true);
    expect(root.querySelectorAll(".cell.hl")).toHaveLength(5);
    view.clearWitness();
    expect(root.querySelectorAll(".witness-black")).toHaveLength(0);
    expect(root.querySelectorAll(".witness-white")).toHaveLength(0);
    expect(root.querySelectorAll(".cell.hl")).toHaveLength(0);
  });
});
