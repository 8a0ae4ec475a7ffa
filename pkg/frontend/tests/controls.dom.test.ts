// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import type {
  EventJson,
  EventsResponse,
  SessionApi,
  StateJson,
  ToggleResponse,
} from "../src/api.js";
import { ApiError } from "../src/api.js";
import { parseBoardFile } from "../src/boardfile.js";
import {
  Explorer,
  loadBoardFile,
  POLL_INTERVAL_MS,
  type StatusElements,
} from "../src/controls.js";
import {
  counts,
  hat,
  key,
  swapOn,
  unkey,
  type Board,
  type LineRef,
} from "../src/geometry.js";
import { applyEvent } from "../src/replay.js";

// In-memory stand-in for the session service.  Toggle and swap follow
// the real semantics (cycle, line trade via the shared geometry); runs
// are scripted: the test pushes events and flips the status by hand.
class FakeApi {
  board: Board = { n: 4, topology: "grid" };
  black = new Set<string>();
  white = new Set<string>();
  status = "idle";
  log: EventJson[] = [];
  calls: string[] = [];
  rejectCell: string | null = null;
  nextError: ApiError | null = null;

  private takeError(): void {
    if (this.nextError) {
      const e = this.nextError;
      this.nextError = null;
      throw e;
    }
  }

  private stateJson(): StateJson {
    const battle = { black: this.black, white: this.white };
    return {
      n: this.board.n,
      topology: this.board.topology,
      black: [...this.black].map(unkey),
      white: [...this.white].map(unkey),
      counts: counts(battle),
      peaceful: true,
      search_status: this.status,
    };
  }

  private push(event: Omit<EventJson, "k">): void {
    this.log.push({ ...event, k: this.log.length });
  }

  async createSession(topology: Board["topology"], n: number) {
    this.calls.push(`create ${topology} ${n}`);
    this.board = { n, topology };
    return { id: "fake", state: this.stateJson() };
  }

  async state(_id: string): Promise<{ state: StateJson }> {
    return { state: this.stateJson() };
  }

  async toggle(
    _id: string,
    cell: [number, number],
    color: "black" | "white",
  ): Promise<ToggleResponse> {
    this.calls.push(`toggle ${cell[0]},${cell[1]} ${color}`);
    this.takeError();
    const k = key(cell[0], cell[1]);
    if (this.rejectCell === k) {
      return {
        accepted: false,
        witness: { line: "diag 0", black: [1, 1], white: cell },
        state: this.stateJson(),
      };
    }
    const [ours, theirs] =
      color === "black" ? [this.black, this.white] : [this.white, this.black];
    let now: "black" | "white" | "empty";
    if (ours.has(k)) {
      ours.delete(k);
      now = "empty";
    } else {
      theirs.delete(k);
      ours.add(k);
      now = color;
    }
    this.push({
      type: "toggled",
      cell,
      set: now,
      counts: counts({ black: this.black, white: this.white }),
    });
    return { accepted: true, witness: null, state: this.stateJson() };
  }

  async swap(_id: string, line: string): Promise<{ state: StateJson }> {
    this.calls.push(`swap ${line}`);
    this.takeError();
    const [kind, index] = line.split(" ");
    const ref = { kind, index: Number(index) } as LineRef;
    const after = swapOn(this.board, { black: this.black, white: this.white }, ref);
    this.black = after.black;
    this.white = after.white;
    this.push({ type: "swapped", line, counts: counts(after) });
    return { state: this.stateJson() };
  }

  async step(_id: string) {
    this.calls.push("step");
    return { event: null, state: this.stateJson() };
  }

  async run(_id: string, options: { target: number }) {
    this.calls.push(`run ${options.target}`);
    this.takeError();
    this.status = "running";
    return { state: this.stateJson() };
  }

  async stop(_id: string) {
    this.calls.push("stop");
    this.status = "stopped";
    return { state: this.stateJson() };
  }

  async events(_id: string, since = 0): Promise<EventsResponse> {
    this.calls.push(`events ${since}`);
    return { events: this.log.slice(since), next: this.log.length };
  }

  async deleteSession(_id: string): Promise<void> {
    this.calls.push("delete");
  }

  // test helper: scripted search events, applied to the fake's battle the
  // same way the real server's sink applies them
  emit(events: Array<{ type: string; line?: string; black?: [number, number][] }>): void {
    for (const e of events) {
      const battle = applyEvent(
        this.board,
        { black: this.black, white: this.white },
        { ...e, k: 0, counts: { black: 0, white: 0, min: 0 } },
      );
      this.black = battle.black;
      this.white = battle.white;
      this.push({ ...e, counts: counts(battle) });
    }
  }

  // test helper: a finished run leaves this army on the board
  finishRun(status: string, black: Array<[number, number]>): void {
    const army = black.map(([i, j]) => key(i, j));
    this.black = new Set(army);
    this.white = hat(this.board, army);
    this.status = status;
    this.push({
      type: "run_finished",
      status,
      black,
      counts: counts({ black: this.black, white: this.white }),
    });
  }
}

function statusEls(): StatusElements {
  const make = (id: string) => {
    const el = document.createElement("div");
    el.id = id;
    document.body.appendChild(el);
    return el;
  };
  return { counters: make("counters"), status: make("status"), message: make("message") };
}

let fake: FakeApi;
let api: SessionApi;
let root: HTMLElement;
let els: StatusElements;

beforeEach(() => {
  document.body.textContent = "";
  fake = new FakeApi();
  api = fake as unknown as SessionApi;
  root = document.createElement("div");
  document.body.appendChild(root);
  els = statusEls();
});

afterEach(() => {
  vi.useRealTimers();
});

describe("Explorer", () => {
  it("creates a session and renders server counts", async () => {
    const explorer = await Explorer.create(api, "torus", 4, root, els);
    expect(fake.calls).toContain("create torus 4");
    expect(root.querySelectorAll(".cell")).toHaveLength(16);
    expect(els.counters.textContent).toBe("0 / 0 (min 0)");
    expect(els.status.textContent).toBe("idle");
    expect(explorer.running).toBe(false);
  });

  it("toggles through empty -> black -> white -> empty on clicks", async () => {
    const explorer = await Explorer.create(api, "grid", 4, root, els);
    await explorer.cellClicked(2, 2, explorer.view.colorAt(2, 2));
    expect(explorer.view.colorAt(2, 2)).toBe("black");
    await explorer.cellClicked(2, 2, explorer.view.colorAt(2, 2));
    expect(explorer.view.colorAt(2, 2)).toBe("white");
    await explorer.cellClicked(2, 2, explorer.view.colorAt(2, 2));
    expect(explorer.view.colorAt(2, 2)).toBeNull();
    expect(fake.calls.filter((c) => c.startsWith("toggle"))).toEqual([
      "toggle 2,2 black",
      "toggle 2,2 white",
      "toggle 2,2 white",
    ]);
  });

  it("shows the witness when a toggle is rejected", async () => {
    const explorer = await Explorer.create(api, "grid", 4, root, els);
    fake.rejectCell = key(3, 3);
    await explorer.cellClicked(3, 3, null);
    expect(els.message.textContent).toBe("rejected: diag 0 sees both colors");
    const witnessed = root.querySelector<HTMLElement>(".witness-white");
    expect(witnessed?.dataset.cell).toBe(key(3, 3));
    expect(explorer.view.colorAt(3, 3)).toBeNull();
    // a later accepted edit clears the witness
    fake.rejectCell = null;
    await explorer.cellClicked(1, 2, null);
    expect(root.querySelectorAll(".witness-white")).toHaveLength(0);
    expect(els.message.textContent).toBe("");
  });

  it("applies a swap and repaints from the response state", async () => {
    const explorer = await Explorer.create(api, "grid", 4, root, els);
    await explorer.cellClicked(1, 1, null);
    await explorer.swap({ kind: "row", index: 1 });
    // the lone black queen is traded away; hat of nothing is everything
    expect(explorer.battle.black.size).toBe(0);
    expect(explorer.view.colorAt(1, 1)).toBe("white");
    expect(explorer.battle.white.size).toBe(16);
    expect(els.counters.textContent).toBe("0 / 16 (min 0)");
  });

  it("blocks edits locally while a run is live", async () => {
    const explorer = await Explorer.create(api, "grid", 4, root, els);
    vi.useFakeTimers();
    await explorer.run({ target: 5 });
    expect(explorer.running).toBe(true);
    const before = fake.calls.length;
    await explorer.cellClicked(1, 1, null);
    await explorer.swap({ kind: "row", index: 1 });
    await explorer.step();
    expect(fake.calls.length).toBe(before); // no requests went out
    expect(els.message.textContent).toContain("disabled while the search runs");
    explorer.stopPolling();
  });

  it("surfaces a 409 from the server as a friendly note", async () => {
    const explorer = await Explorer.create(api, "grid", 4, root, els);
    fake.nextError = new ApiError(409, "search is running");
    await explorer.swap({ kind: "col", index: 2 });
    expect(els.message.textContent).toBe("a search is running; stop it to edit");
    fake.nextError = new ApiError(422, "no such line");
    await explorer.swap({ kind: "col", index: 2 });
    expect(els.message.textContent).toBe("server: no such line");
  });

  it("animates run events and lands on the final state", async () => {
    const explorer = await Explorer.create(api, "torus", 5, root, els);
    vi.useFakeTimers();
    await explorer.run({ target: 2 });
    expect(els.status.textContent).toBe("running");

    // the "search" trades a queen placement for a better one
    fake.emit([
      { type: "initialized", black: [[1, 1]] },
      { type: "swapped_for_w", line: "row 1" },
    ]);
    await explorer.poll();
    expect(explorer.battle.black.size).toBe(0);
    expect(els.counters.textContent).toBe("0 / 25 (min 0)");

    fake.finishRun("target_reached", [[1, 1], [2, 3]]);
    await explorer.poll();
    expect(els.status.textContent).toBe("target_reached");
    expect(els.message.textContent).toBe("search finished: target_reached");
    expect(explorer.battle.black).toEqual(new Set([key(1, 1), key(2, 3)]));

    // run_finished stops the poll loop: time passing adds no requests
    const callsAfter = fake.calls.length;
    await vi.advanceTimersByTimeAsync(POLL_INTERVAL_MS * 4);
    expect(fake.calls.length).toBe(callsAfter);
  });

  it("exports the current battle as a board file", async () => {
    const explorer = await Explorer.create(api, "grid", 3, root, els);
    await explorer.cellClicked(1, 1, null);
    const text = explorer.exportBoardFile();
    expect(text).toBe("grid 3\nB..\n...\n...\n");
    const back = parseBoardFile(text);
    expect(back.battle.black).toEqual(explorer.battle.black);
  });
});

describe("loadBoardFile", () => {
  it("replays a board file queen by queen, black first", async () => {
    const file = parseBoardFile("grid 3\nB..\n..W\n.W.\n");
    const explorer = await loadBoardFile(api, file, root, els);
    expect(els.counters.textContent).toBe("1 / 2 (min 1)");
    expect(explorer.battle.black).toEqual(new Set([key(1, 1)]));
    expect(explorer.battle.white).toEqual(new Set([key(2, 3), key(3, 2)]));
    const toggles = fake.calls.filter((c) => c.startsWith("toggle"));
    expect(toggles[0]).toBe("toggle 1,1 black");
    expect(toggles.slice(1).every((c) => c.endsWith("white"))).toBe(true);
    // the cursor is caught up: a later poll animates nothing
    expect(explorer.eventCursor).toBe(fake.log.length);
  });

  it("disposes the previous session and rejects bad files", async () => {
    const first = await Explorer.create(api, "grid", 4, root, els);
    fake.rejectCell = key(1, 1);
    const file = parseBoardFile("grid 3\nB..\n...\n...\n");
    await expect(loadBoardFile(api, file, root, els, first)).rejects.toThrow(
      /not peaceful/,
    );
    expect(fake.calls).toContain("delete");
  });
});
