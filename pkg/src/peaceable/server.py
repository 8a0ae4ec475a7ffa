"""HTTP session service for interactive exploration.

Sessions are in-memory: each holds one battle, an append-only event log,
and at most one running search.  Mutations are serialized per session; a
running search owns the battle, so toggle/swap/step answer 409 until it
finishes or is stopped.  The event log replays: initialized, restarted,
and run_finished events carry the full black army, swap events carry the
line, so applying swaps from the last army-bearing event reproduces the
current board.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .battle import Battle, counts, hat, is_peaceful, make_battle, swap_on
from .board import Topology, check_line, make_board, parse_line
from .rng import SplitMix64
from .swap_search import (
    EventType,
    SearchConfig,
    SearchEvent,
    SearchState,
    improve_step,
    run,
)

DEFAULT_RUN_BUDGET = 60.0


@dataclass
class _Session:
    id: str
    battle: Battle
    lock: threading.RLock = field(default_factory=threading.RLock)
    events: list[dict] = field(default_factory=list)
    status: str = "idle"
    thread: Optional[threading.Thread] = None
    stop_flag: threading.Event = field(default_factory=threading.Event)

    def log(self, entry: dict) -> dict:
        entry["k"] = len(self.events)
        self.events.append(entry)
        return entry


def _counts_dict(battle: Battle) -> dict:
    c = counts(battle)
    return {"black": c.black, "white": c.white, "min": c.min}


def _cells(cells) -> list[list[int]]:
    return [[i, j] for i, j in sorted(cells)]


def _state_dict(s: _Session) -> dict:
    b = s.battle
    return {
        "n": b.board.n,
        "topology": b.board.topology.value,
        "black": _cells(b.black),
        "white": _cells(b.white),
        "counts": _counts_dict(b),
        "peaceful": is_peaceful(b).peaceful,
        "search_status": s.status,
    }


def _search_event_entry(ev: SearchEvent) -> dict:
    entry: dict = {
        "type": ev.type.value,
        "counts": {"black": ev.counts.black, "white": ev.counts.white,
                   "min": ev.counts.min},
    }
    if ev.line is not None:
        entry["line"] = str(ev.line)
    if ev.black is not None:
        entry["black"] = _cells(ev.black)
    return entry


class CreateBody(BaseModel):
    topology: Literal["grid", "torus"]
    n: int = Field(ge=1, le=512)


class ToggleBody(BaseModel):
    cell: tuple[int, int]
    color: Literal["black", "white"]
    force: bool = False


class SwapBody(BaseModel):
    line: str


class RunBody(BaseModel):
    target: int
    seed: int = 0
    budget: Optional[float] = None
    restarts: Optional[int] = None


def create_app() -> FastAPI:
    app = FastAPI(title="peaceable")
    # the browser client may be served from another local port
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store: dict[str, _Session] = {}
    store_lock = threading.Lock()

    def get_session(sid: str) -> _Session:
        with store_lock:
            s = store.get(sid)
        if s is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return s

    def reject_if_running(s: _Session) -> None:
        if s.status == "running":
            raise HTTPException(status_code=409, detail="search is running")

    @app.post("/session")
    def create_session(body: CreateBody) -> dict:
        board = make_board(body.n, Topology(body.topology))
        s = _Session(uuid.uuid4().hex[:12], make_battle(board, (), ()))
        with store_lock:
            store[s.id] = s
        return {"id": s.id, "state": _state_dict(s)}

    @app.get("/session/{sid}/state")
    def get_state(sid: str) -> dict:
        s = get_session(sid)
        with s.lock:
            return {"state": _state_dict(s)}

    @app.post("/session/{sid}/toggle")
    def toggle(sid: str, body: ToggleBody) -> dict:
        s = get_session(sid)
        with s.lock:
            reject_if_running(s)
            board = s.battle.board
            i, j = body.cell
            if not (1 <= i <= board.n and 1 <= j <= board.n):
                raise HTTPException(
                    status_code=422, detail=f"cell ({i}, {j}) is off the board"
                )
            cell = (i, j)
            black = set(s.battle.black)
            white = set(s.battle.white)
            ours, theirs = (black, white) if body.color == "black" else (white, black)
            if cell in ours:
                ours.discard(cell)
                now = "empty"
            else:
                theirs.discard(cell)
                ours.add(cell)
                now = body.color
            candidate = make_battle(board, black, white)
            verdict = is_peaceful(candidate)
            if not verdict.peaceful and not body.force:
                return {
                    "accepted": False,
                    "witness": {
                        "line": str(verdict.line),
                        "black": list(verdict.black_cell),
                        "white": list(verdict.white_cell),
                    },
                    "state": _state_dict(s),
                }
            s.battle = candidate
            s.log({
                "type": "toggled",
                "cell": [i, j],
                "set": now,
                "counts": _counts_dict(candidate),
            })
            return {"accepted": True, "witness": None, "state": _state_dict(s)}

    @app.post("/session/{sid}/swap")
    def swap(sid: str, body: SwapBody) -> dict:
        s = get_session(sid)
        with s.lock:
            reject_if_running(s)
            try:
                line = parse_line(body.line)
                check_line(s.battle.board, line)
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
            s.battle = swap_on(s.battle, line)
            s.log({
                "type": "swapped",
                "line": str(line),
                "counts": _counts_dict(s.battle),
            })
            return {"state": _state_dict(s)}

    @app.post("/session/{sid}/step")
    def step(sid: str) -> dict:
        s = get_session(sid)
        with s.lock:
            reject_if_running(s)
            state = SearchState(
                s.battle.board, SplitMix64(0), s.battle, s.battle,
                sink=lambda ev: s.log(_search_event_entry(ev)),
            )
            moved = improve_step(state)
            s.battle = state.current
            return {
                "event": _search_event_entry(moved) if moved else None,
                "state": _state_dict(s),
            }

    @app.post("/session/{sid}/run")
    def start_run(sid: str, body: RunBody) -> dict:
        s = get_session(sid)
        with s.lock:
            reject_if_running(s)
            budget = body.budget
            if budget is None and body.restarts is None:
                budget = DEFAULT_RUN_BUDGET
            try:
                config = SearchConfig(
                    board=s.battle.board,
                    target=body.target,
                    seed=body.seed,
                    max_restarts=body.restarts,
                    time_budget=budget,
                )
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
            s.stop_flag.clear()
            s.status = "running"

            def sink(ev: SearchEvent) -> None:
                with s.lock:
                    if ev.black is not None:
                        army = [tuple(c) for c in ev.black]
                        s.battle = make_battle(
                            config.board, army, hat(config.board, army)
                        )
                    elif ev.type is EventType.COLORS_SWAPPED:
                        s.battle = Battle(
                            config.board, s.battle.white, s.battle.black
                        )
                    elif ev.line is not None:
                        s.battle = swap_on(s.battle, ev.line)
                    s.log(_search_event_entry(ev))

            def worker() -> None:
                result = run(config, progress_sink=sink,
                             should_stop=s.stop_flag.is_set)
                with s.lock:
                    s.battle = result.battle
                    if result.reached_target:
                        s.status = "target_reached"
                    elif s.stop_flag.is_set():
                        s.status = "stopped"
                    else:
                        s.status = "budget_exhausted"
                    s.log({
                        "type": "run_finished",
                        "status": s.status,
                        "black": _cells(result.battle.black),
                        "counts": _counts_dict(result.battle),
                    })

            s.thread = threading.Thread(target=worker, daemon=True)
            s.thread.start()
            return {"state": _state_dict(s)}

    @app.post("/session/{sid}/stop")
    def stop(sid: str) -> dict:
        s = get_session(sid)
        thread = s.thread
        if s.status == "running":
            s.stop_flag.set()
            if thread is not None:
                thread.join(timeout=30.0)
        with s.lock:
            return {"state": _state_dict(s)}

    @app.get("/session/{sid}/events")
    def events(sid: str, since: int = 0) -> dict:
        s = get_session(sid)
        with s.lock:
            tail = s.events[max(0, since):]
            return {"events": tail, "next": len(s.events)}

    @app.delete("/session/{sid}")
    def delete(sid: str) -> Response:
        s = get_session(sid)
        if s.status == "running":
            s.stop_flag.set()
            if s.thread is not None:
                s.thread.join(timeout=30.0)
        with store_lock:
            store.pop(sid, None)
        return Response(status_code=204)

    return app
