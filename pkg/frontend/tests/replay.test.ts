import { describe, expect, it } from "vitest";

import type { EventJson } from "../src/api.js";
import { counts, hat, key, swapOn, type Board } from "../src/geometry.js";
import { applyEvent, emptyBattle, replay } from "../src/replay.js";

const G3: Board = { n: 3, topology: "grid" };
const zero = { black: 0, white: 0, min: 0 };

function ev(partial: Partial<EventJson> & { type: string }): EventJson {
  return { k: 0, counts: zero, ...partial };
}

describe("applyEvent", () => {
  it("toggled adds, replaces, and clears a cell", () => {
    let battle = emptyBattle();
    battle = applyEvent(G3, battle, ev({ type: "toggled", cell: [1, 1], set: "black" }));
    expect(battle.black.has(key(1, 1))).toBe(true);
    battle = applyEvent(G3, battle, ev({ type: "toggled", cell: [1, 1], set: "white" }));
    expect(battle.black.size).toBe(0);
    expect(battle.white.has(key(1, 1))).toBe(true);
    battle = applyEvent(G3, battle, ev({ type: "toggled", cell: [1, 1], set: "empty" }));
    expect(counts(battle)).toEqual(zero);
  });

  it("army-bearing events reset the board to (black, hat)", () => {
    const before = {
      black: new Set([key(3, 3)]),
      white: new Set([key(1, 2)]),
    };
    for (const type of ["initialized", "restarted", "run_finished"]) {
      const after = applyEvent(G3, before, ev({ type, black: [[1, 1]] }));
      expect([...after.black]).toEqual([key(1, 1)]);
      expect(after.white).toEqual(hat(G3, [key(1, 1)]));
    }
  });

  it("swap events delegate to the geometry swap", () => {
    const battle = {
      black: new Set([key(1, 1), key(3, 2)]),
      white: new Set<string>(),
    };
    for (const type of ["swapped", "swapped_for_w", "swapped_for_sum"]) {
      const after = applyEvent(G3, battle, ev({ type, line: "row 1" }));
      expect(after).toEqual(swapOn(G3, battle, { kind: "row", index: 1 }));
    }
  });

  it("colors_swapped exchanges the armies", () => {
    const battle = {
      black: new Set([key(1, 1)]),
      white: new Set([key(2, 3), key(3, 2)]),
    };
    const after = applyEvent(G3, battle, ev({ type: "colors_swapped" }));
    expect(after.black).toEqual(battle.white);
    expect(after.white).toEqual(battle.black);
  });

  it("ignores status-only and unknown events", () => {
    const battle = { black: new Set([key(2, 2)]), white: new Set<string>() };
    for (const type of ["target_reached", "mystery"]) {
      expect(applyEvent(G3, battle, ev({ type }))).toBe(battle);
    }
  });
});

describe("replay", () => {
  it("folds a mixed log to the expected battle", () => {
    const log: EventJson[] = [
      ev({ type: "toggled", cell: [1, 1], set: "black" }),
      ev({ type: "toggled", cell: [3, 2], set: "black" }),
      ev({ type: "swapped", line: "row 1" }),
      ev({ type: "colors_swapped" }),
    ];
    const swapped = swapOn(
      G3,
      { black: new Set([key(1, 1), key(3, 2)]), white: new Set() },
      { kind: "row", index: 1 },
    );
    const battle = replay(G3, log);
    expect(battle.black).toEqual(swapped.white);
    expect(battle.white).toEqual(swapped.black);
  });

  it("only history after the last army-bearing event matters", () => {
    const noise: EventJson[] = [
      ev({ type: "toggled", cell: [2, 2], set: "white" }),
      ev({ type: "swapped", line: "col 2" }),
    ];
    const tail: EventJson[] = [
      ev({ type: "restarted", black: [[1, 1], [3, 2]] }),
      ev({ type: "swapped_for_sum", line: "row 1" }),
    ];
    expect(replay(G3, [...noise, ...tail])).toEqual(replay(G3, tail));
  });
});
