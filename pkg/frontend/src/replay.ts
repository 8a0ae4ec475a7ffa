// Event-log replay: folding the session's append-only log over an empty
// board reproduces the current battle.  The search panel uses this to
// animate a run from its events instead of re-fetching state per frame.

import type { EventJson, StateJson } from "./api.js";
import type { Battle, Board } from "./geometry.js";
import { hat, key, parseLine, swapOn } from "./geometry.js";

export function emptyBattle(): Battle {
  return { black: new Set(), white: new Set() };
}

export function battleFromState(state: StateJson): Battle {
  return {
    black: new Set(state.black.map(([i, j]) => key(i, j))),
    white: new Set(state.white.map(([i, j]) => key(i, j))),
  };
}

// One event applied to a battle.  Army-bearing events (initialized,
// restarted, run_finished) reset the board outright, so replay never
// depends on history before the latest of them.
export function applyEvent(
  board: Board,
  battle: Battle,
  event: EventJson,
): Battle {
  switch (event.type) {
    case "initialized":
    case "restarted":
    case "run_finished": {
      const black = new Set(
        (event.black ?? []).map(([i, j]) => key(i, j)),
      );
      return { black, white: hat(board, black) };
    }
    case "swapped":
    case "swapped_for_w":
    case "swapped_for_sum":
      return swapOn(board, battle, parseLine(event.line!));
    case "colors_swapped":
      return { black: battle.white, white: battle.black };
    case "toggled": {
      const [i, j] = event.cell!;
      const k = key(i, j);
      const black = new Set(battle.black);
      const white = new Set(battle.white);
      black.delete(k);
      white.delete(k);
      if (event.set === "black") black.add(k);
      else if (event.set === "white") white.add(k);
      return { black, white };
    }
    case "target_reached":
      return battle;
    default:
      return battle; // unknown events carry no board change
  }
}

export function replay(board: Board, events: EventJson[]): Battle {
  let battle = emptyBattle();
  for (const event of events) battle = applyEvent(board, battle, event);
  return battle;
}
