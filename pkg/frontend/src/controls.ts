// View model wiring the board, the HTTP client, and the search panel.
// One Explorer owns one server session.  All state changes flow through
// applyState/applyEvents so the counters always show server-stamped
// numbers, never client arithmetic.

import type {
  CountsJson,
  EventJson,
  SessionApi,
  StateJson,
} from "./api.js";
import { ApiError } from "./api.js";
import type { BoardFile } from "./boardfile.js";
import { serializeBoardFile } from "./boardfile.js";
import { BoardView, cycleColor } from "./board.js";
import type { Battle, Board, LineRef } from "./geometry.js";
import { formatLine, parseLine, unkey } from "./geometry.js";
import { applyEvent, battleFromState } from "./replay.js";

export const POLL_INTERVAL_MS = 250;

export interface StatusElements {
  counters: HTMLElement; // "84 / 72 (min 72)"
  status: HTMLElement; // idle | running | target_reached | ...
  message: HTMLElement; // rejections, errors, notes
}

export interface RunOptions {
  target: number;
  seed?: number;
  budget?: number;
  restarts?: number;
}

export class Explorer {
  readonly view: BoardView;
  battle: Battle = { black: new Set(), white: new Set() };
  searchStatus = "idle";
  eventCursor = 0;
  private timer: ReturnType<typeof setInterval> | null = null;

  private constructor(
    readonly api: SessionApi,
    readonly sessionId: string,
    readonly board: Board,
    boardRoot: HTMLElement,
    private readonly els: StatusElements,
  ) {
    this.view = new BoardView(boardRoot, {
      onCellClick: (i, j, current) => void this.cellClicked(i, j, current),
      onLineClick: (line) => void this.swap(line),
      onLineHover: (line) => this.view.highlightLine(line),
    });
    this.view.setBoard(board);
  }

  static async create(
    api: SessionApi,
    topology: Board["topology"],
    n: number,
    boardRoot: HTMLElement,
    els: StatusElements,
  ): Promise<Explorer> {
    const { id, state } = await api.createSession(topology, n);
    const explorer = new Explorer(
      api,
      id,
      { n: state.n, topology: state.topology },
      boardRoot,
      els,
    );
    explorer.applyState(state);
    return explorer;
  }

  get running(): boolean {
    return this.searchStatus === "running";
  }

  applyState(state: StateJson): void {
    this.battle = battleFromState(state);
    this.view.update(this.battle);
    this.searchStatus = state.search_status;
    this.renderCounts(state.counts);
    this.els.status.textContent = this.searchStatus;
  }

  private renderCounts(counts: CountsJson): void {
    this.els.counters.textContent =
      `${counts.black} / ${counts.white} (min ${counts.min})`;
  }

  private note(text: string): void {
    this.els.message.textContent = text;
  }

  private guardIdle(action: string): boolean {
    if (this.running) {
      this.note(`${action} is disabled while the search runs`);
      return false;
    }
    return true;
  }

  async cellClicked(
    i: number,
    j: number,
    current: "black" | "white" | null,
  ): Promise<void> {
    if (!this.guardIdle("editing")) return;
    this.view.clearWitness();
    try {
      const r = await this.api.toggle(this.sessionId, [i, j], cycleColor(current));
      if (!r.accepted && r.witness) {
        this.note(`rejected: ${r.witness.line} sees both colors`);
        this.view.showWitness(
          parseLine(r.witness.line),
          r.witness.black,
          r.witness.white,
        );
        return;
      }
      this.note("");
      this.applyState(r.state);
    } catch (error) {
      this.showError(error);
    }
  }

  async swap(line: LineRef): Promise<void> {
    if (!this.guardIdle("swapping")) return;
    this.view.clearWitness();
    try {
      const r = await this.api.swap(this.sessionId, formatLine(line));
      this.note("");
      this.applyState(r.state);
    } catch (error) {
      this.showError(error);
    }
  }

  async step(): Promise<void> {
    if (!this.guardIdle("stepping")) return;
    try {
      const r = await this.api.step(this.sessionId);
      this.note(r.event ? `step: ${r.event.type}` : "step: already at a fixed point");
      this.applyState(r.state);
    } catch (error) {
      this.showError(error);
    }
  }

  // Starts the server-side search and animates its event stream.  The
  // poll loop folds fresh events onto the local battle and repaints by
  // diff; counters come from the last event's server-stamped counts.
  async run(options: RunOptions): Promise<void> {
    if (!this.guardIdle("starting a run")) return;
    this.view.clearWitness();
    try {
      const r = await this.api.run(this.sessionId, options);
      this.applyState(r.state);
      this.note("");
      this.startPolling();
    } catch (error) {
      this.showError(error);
    }
  }

  async stop(): Promise<void> {
    try {
      const r = await this.api.stop(this.sessionId);
      this.stopPolling();
      this.applyState(r.state);
    } catch (error) {
      this.showError(error);
    }
  }

  private startPolling(): void {
    this.stopPolling();
    this.timer = setInterval(() => void this.poll(), POLL_INTERVAL_MS);
  }

  stopPolling(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async poll(): Promise<void> {
    try {
      const { events, next } = await this.api.events(
        this.sessionId,
        this.eventCursor,
      );
      this.eventCursor = next;
      let finished = false;
      for (const event of events) {
        this.battle = applyEvent(this.board, this.battle, event);
        this.renderCounts(event.counts);
        if (event.type === "run_finished") finished = true;
      }
      if (events.length > 0) this.view.update(this.battle);
      if (finished) {
        this.stopPolling();
        const { state } = await this.api.state(this.sessionId);
        this.applyState(state);
        this.note(`search finished: ${state.search_status}`);
      }
    } catch (error) {
      this.stopPolling();
      this.showError(error);
    }
  }

  // Catch the event cursor up without animating (used after manual
  // edits so a later run animates only its own events).
  async syncCursor(): Promise<void> {
    const { next } = await this.api.events(this.sessionId, this.eventCursor);
    this.eventCursor = next;
  }

  exportBoardFile(): string {
    return serializeBoardFile({ board: this.board, battle: this.battle });
  }

  private showError(error: unknown): void {
    if (error instanceof ApiError) {
      this.note(
        error.status === 409
          ? "a search is running; stop it to edit"
          : `server: ${error.message}`,
      );
    } else {
      this.note(String(error));
    }
  }

  async dispose(): Promise<void> {
    this.stopPolling();
    await this.api.deleteSession(this.sessionId).catch(() => {});
  }
}

// Loading a board file means a fresh session of the right geometry plus
// one toggle per queen.  Black goes in first: every prefix of a peaceful
// battle is peaceful, so no placement is rejected.
export async function loadBoardFile(
  api: SessionApi,
  file: BoardFile,
  boardRoot: HTMLElement,
  els: StatusElements,
  previous?: Explorer,
): Promise<Explorer> {
  if (previous) await previous.dispose();
  const explorer = await Explorer.create(
    api,
    file.board.topology,
    file.board.n,
    boardRoot,
    els,
  );
  for (const [army, color] of [
    [file.battle.black, "black"],
    [file.battle.white, "white"],
  ] as const) {
    for (const k of army) {
      const [i, j] = unkey(k);
      const r = await api.toggle(explorer.sessionId, [i, j], color);
      if (!r.accepted) {
        throw new Error(`board file not peaceful: ${r.witness?.line}`);
      }
    }
  }
  const { state } = await api.state(explorer.sessionId);
  explorer.applyState(state);
  await explorer.syncCursor();
  return explorer;
}
