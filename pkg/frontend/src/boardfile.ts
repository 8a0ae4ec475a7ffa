// Plain-text board format shared with the server's file tooling:
// header "<topology> <n>", then n rows of n characters from {B, W, .}.

import type { Battle, Board, Topology } from "./geometry.js";
import { key } from "./geometry.js";

export interface BoardFile {
  readonly board: Board;
  readonly battle: Battle;
}

export function parseBoardFile(text: string): BoardFile {
  const rawLines = text.split("\n");
  // one trailing newline is fine, mid-file blanks are not
  if (rawLines.length > 1 && rawLines[rawLines.length - 1] === "") {
    rawLines.pop();
  }
  const header = rawLines[0] ?? "";
  const m = /^(grid|torus) (\d+)$/.exec(header);
  if (!m) throw new Error(`bad header ${JSON.stringify(header)}`);
  const topology = m[1] as Topology;
  const n = Number(m[2]);
  if (n < 1) throw new Error(`bad size ${n}`);
  if (rawLines.length - 1 !== n) {
    throw new Error(`want ${n} rows, got ${rawLines.length - 1}`);
  }
  const black = new Set<string>();
  const white = new Set<string>();
  for (let i = 1; i <= n; i++) {
    const row = rawLines[i]!;
    if (row.length !== n) {
      throw new Error(`row ${i} has length ${row.length}, want ${n}`);
    }
    for (let j = 1; j <= n; j++) {
      const ch = row[j - 1];
      if (ch === "B") black.add(key(i, j));
      else if (ch === "W") white.add(key(i, j));
      else if (ch !== ".") {
        throw new Error(`bad cell ${JSON.stringify(ch)} at row ${i}`);
      }
    }
  }
  return { board: { n, topology }, battle: { black, white } };
}

export function serializeBoardFile(file: BoardFile): string {
  const { n, topology } = file.board;
  const rows: string[] = [`${topology} ${n}`];
  for (let i = 1; i <= n; i++) {
    let row = "";
    for (let j = 1; j <= n; j++) {
      const k = key(i, j);
      row += file.battle.black.has(k) ? "B" : file.battle.white.has(k) ? "W" : ".";
    }
    rows.push(row);
  }
  return rows.join("\n") + "\n";
}
