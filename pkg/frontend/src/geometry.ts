// Client-side mirror of the server's board math: lines, the hat
// operator, and swaps.  Needed to replay event logs and to highlight
// lines without a round trip.  The integration tests pin this against
// the server's answers.

export type Topology = "grid" | "torus";
export type LineKind = "row" | "col" | "diag" | "skew";

export interface Board {
  readonly n: number;
  readonly topology: Topology;
}

export interface LineRef {
  readonly kind: LineKind;
  readonly index: number;
}

export type Cell = readonly [number, number];

// Armies are sets of "i,j" keys; tuples are useless as Set members.
export type CellSet = Set<string>;

export interface Battle {
  readonly black: CellSet;
  readonly white: CellSet;
}

export interface CountsTriple {
  readonly black: number;
  readonly white: number;
  readonly min: number;
}

export function key(i: number, j: number): string {
  return `${i},${j}`;
}

export function unkey(k: string): Cell {
  const [i, j] = k.split(",").map(Number);
  return [i!, j!];
}

export function formatLine(line: LineRef): string {
  return `${line.kind} ${line.index}`;
}

export function parseLine(text: string): LineRef {
  const parts = text.trim().split(/\s+/);
  const kind = parts[0] as LineKind;
  if (
    parts.length !== 2 ||
    !["row", "col", "diag", "skew"].includes(kind) ||
    !/^-?\d+$/.test(parts[1]!)
  ) {
    throw new Error(`bad line ${JSON.stringify(text)}`);
  }
  return { kind, index: Number(parts[1]) };
}

export function lines(board: Board): LineRef[] {
  const { n, topology } = board;
  const out: LineRef[] = [];
  for (let i = 1; i <= n; i++) out.push({ kind: "row", index: i });
  for (let j = 1; j <= n; j++) out.push({ kind: "col", index: j });
  if (topology === "torus") {
    for (let d = 0; d < n; d++) out.push({ kind: "diag", index: d });
    for (let s = 0; s < n; s++) out.push({ kind: "skew", index: s });
  } else {
    for (let d = -(n - 1); d <= n - 1; d++) out.push({ kind: "diag", index: d });
    for (let s = 2; s <= 2 * n; s++) out.push({ kind: "skew", index: s });
  }
  return out;
}

function mod(a: number, n: number): number {
  return ((a % n) + n) % n;
}

export function cellsOfLine(board: Board, line: LineRef): Cell[] {
  const { n, topology } = board;
  const out: Cell[] = [];
  for (let i = 1; i <= n; i++) {
    for (let j = 1; j <= n; j++) {
      if (cellOnLine(board, i, j, line)) out.push([i, j]);
    }
  }
  if (out.length === 0 && !validLineIndex(board, line)) {
    throw new Error(`line ${formatLine(line)} is off an n=${n} ${topology}`);
  }
  return out;
}

function validLineIndex(board: Board, line: LineRef): boolean {
  const { n, topology } = board;
  switch (line.kind) {
    case "row":
    case "col":
      return 1 <= line.index && line.index <= n;
    case "diag":
      return topology === "torus"
        ? 0 <= line.index && line.index < n
        : -(n - 1) <= line.index && line.index <= n - 1;
    case "skew":
      return topology === "torus"
        ? 0 <= line.index && line.index < n
        : 2 <= line.index && line.index <= 2 * n;
  }
}

function cellOnLine(board: Board, i: number, j: number, line: LineRef): boolean {
  const torus = board.topology === "torus";
  switch (line.kind) {
    case "row":
      return i === line.index;
    case "col":
      return j === line.index;
    case "diag":
      return torus ? mod(i - j, board.n) === line.index : i - j === line.index;
    case "skew":
      return torus ? mod(i + j, board.n) === line.index : i + j === line.index;
  }
}

// The four line coordinates of one cell, in `lines` order.
export function linesThrough(board: Board, i: number, j: number): LineRef[] {
  const torus = board.topology === "torus";
  return [
    { kind: "row", index: i },
    { kind: "col", index: j },
    { kind: "diag", index: torus ? mod(i - j, board.n) : i - j },
    { kind: "skew", index: torus ? mod(i + j, board.n) : i + j },
  ];
}

function lineTag(line: LineRef): string {
  return `${line.kind}:${line.index}`;
}

// Cells on no line that meets the given army: the largest compatible
// opposing army.
export function hat(board: Board, army: Iterable<string>): CellSet {
  const occupied = new Set<string>();
  for (const k of army) {
    const [i, j] = unkey(k);
    for (const line of linesThrough(board, i, j)) occupied.add(lineTag(line));
  }
  const free: CellSet = new Set();
  for (let i = 1; i <= board.n; i++) {
    for (let j = 1; j <= board.n; j++) {
      const seen = linesThrough(board, i, j).some((l) =>
        occupied.has(lineTag(l)),
      );
      if (!seen) free.add(key(i, j));
    }
  }
  return free;
}

// Drop the black queens on `line`, refresh white to the new hat.
// Always yields a peaceful battle.
export function swapOn(board: Board, battle: Battle, line: LineRef): Battle {
  const removed = new Set(
    cellsOfLine(board, line).map(([i, j]) => key(i, j)),
  );
  const black = new Set([...battle.black].filter((k) => !removed.has(k)));
  return { black, white: hat(board, black) };
}

export function counts(battle: Battle): CountsTriple {
  const black = battle.black.size;
  const white = battle.white.size;
  return { black, white, min: Math.min(black, white) };
}
