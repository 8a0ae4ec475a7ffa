"""Restarting local search built from line swaps.

One descent works on a battle whose white army is kept at hat(B).  A pass
first normalizes colors so black is the larger army, then applies the first
qualifying swap in line order (rows, columns, diagonals, skew-diagonals,
each by ascending index):

    grow-sum     swap on e with |B \\ e| + |hat(B \\ e)| > |B| + |W|
    grow-white   swap on e with |hat(B \\ e)| > |W|

Both guards read the same pre-move armies; when each has a qualifying line
the grow-sum swap is the one applied.  Letting the sum grow while
min(|B|, |W|) temporarily stalls or falls is what carries a descent past
plateaus that no single min-raising swap can leave.  The descent ends when
no swap qualifies or when a black army repeats (moves are deterministic,
so a repeat is a permanent loop); the search then restarts from a fresh
random army of ceil(n/5) cells.  Every restart, swap, and color flip is
emitted as an event, and the whole run is a pure function of the seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .battle import Battle, Counts, counts, hat, make_battle
from .board import Board, Cell, Incidence, LineRef, incidence
from .rng import SplitMix64


class EventType(str, Enum):
    INITIALIZED = "initialized"
    RESTARTED = "restarted"
    COLORS_SWAPPED = "colors_swapped"
    SWAPPED_FOR_W = "swapped_for_w"
    SWAPPED_FOR_SUM = "swapped_for_sum"
    TARGET_REACHED = "target_reached"


@dataclass(frozen=True)
class SearchEvent:
    type: EventType
    counts: Counts
    line: Optional[LineRef] = None
    black: Optional[tuple[Cell, ...]] = None  # filled on (re)initialization


@dataclass(frozen=True)
class SearchConfig:
    board: Board
    target: int
    seed: int
    max_restarts: Optional[int] = None
    time_budget: Optional[float] = None  # seconds

    def __post_init__(self):
        if self.target < 0 or self.target > self.board.n ** 2:
            raise ValueError(f"target {self.target} out of range for this board")
        if self.max_restarts is not None and self.max_restarts < 0:
            raise ValueError("max_restarts must be >= 0")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


@dataclass
class SearchState:
    board: Board
    rng: SplitMix64
    current: Battle
    best: Battle
    restarts: int = 0
    inner_iterations: int = 0
    events: list[SearchEvent] = field(default_factory=list)
    sink: Optional[Callable[[SearchEvent], None]] = None

    def emit(self, event: SearchEvent) -> None:
        self.events.append(event)
        if self.sink is not None:
            self.sink(event)


@dataclass(frozen=True)
class RunResult:
    battle: Battle
    reached_target: bool
    restarts: int
    inner_iterations: int
    elapsed: float


def random_init(board: Board, rng: SplitMix64) -> Battle:
    """Fresh battle: ceil(n/5) distinct random cells for black, hat for white."""
    n = board.n
    k = -(-n // 5)
    bits = rng.sample_distinct(k, n * n)
    black = [(b // n + 1, b % n + 1) for b in bits]
    return make_battle(board, black, hat(board, black))


def new_search(config: SearchConfig) -> SearchState:
    rng = SplitMix64(config.seed)
    first = random_init(config.board, rng)
    state = SearchState(config.board, rng, first, first)
    state.emit(
        SearchEvent(
            EventType.INITIALIZED,
            counts(first),
            black=tuple(sorted(first.black)),
        )
    )
    return state


def _hat_count(inc: Incidence, bmask: int) -> int:
    attacked = 0
    for lm in inc.line_masks:
        if lm & bmask:
            attacked |= lm
    return inc.ncells - (attacked & inc.full_mask).bit_count()


def _find_move(inc: Incidence, bmask: int, nb: int, nw: int):
    """First qualifying swap in line order, or None.

    Both guards are judged against the same pre-move armies; a grow-sum
    line beats every grow-white line.

    Returns (event type, line position, new black mask, |hat| of it).
    """
    w_move = None
    for pos, lm in enumerate(inc.line_masks):
        nbm = bmask & ~lm
        hc = _hat_count(inc, nbm)
        if nbm.bit_count() + hc > nb + nw:
            return EventType.SWAPPED_FOR_SUM, pos, nbm, hc
        if w_move is None and hc > nw:
            w_move = (EventType.SWAPPED_FOR_W, pos, nbm, hc)
    return w_move


def improve_step(state: SearchState) -> Optional[SearchEvent]:
    """One pass of the descent body on state.current.

    Normalizes colors first (emitting COLORS_SWAPPED when it fires), then
    applies the first grow-sum swap, falling back to the first grow-white
    swap.  Returns the swap event, or None when neither guard qualifies.
    """
    board = state.board
    battle = state.current
    if len(battle.white) > len(battle.black):
        battle = Battle(board, battle.white, battle.black)
        state.current = battle
        state.emit(SearchEvent(EventType.COLORS_SWAPPED, counts(battle)))

    inc = incidence(board)
    bmask = inc.mask_of(battle.black)
    move = _find_move(inc, bmask, len(battle.black), len(battle.white))
    if move is None:
        return None
    etype, pos, nbm, _ = move
    black = frozenset(inc.cells_of(nbm))
    white = hat(board, black)
    state.current = Battle(board, black, white)
    event = SearchEvent(etype, counts(state.current), line=inc.lines[pos])
    state.emit(event)
    return event


def run(
    config: SearchConfig,
    progress_sink: Optional[Callable[[SearchEvent], None]] = None,
    should_stop: Optional[Callable[[], bool]] = None,
) -> RunResult:
    """Restart the descent until min(|B|, |W|) >= target or a budget runs out.

    Always returns the best battle seen; `reached_target` says whether the
    target was met.  Identical configs replay identical event streams.
    """
    start = time.monotonic()
    state = new_search(config)
    if progress_sink is not None:
        state.sink = progress_sink
        progress_sink(state.events[0])

    def out_of_budget() -> bool:
        if should_stop is not None and should_stop():
            return True
        if config.time_budget is not None:
            return time.monotonic() - start > config.time_budget
        return False

    inc = incidence(config.board)

    def reached() -> Optional[RunResult]:
        if counts(state.best).min >= config.target:
            state.emit(SearchEvent(EventType.TARGET_REACHED, counts(state.best)))
            return RunResult(
                state.best, True, state.restarts, state.inner_iterations,
                time.monotonic() - start,
            )
        return None

    while True:
        done = reached()
        if done is not None:
            return done

        # one descent; a repeated black army means a permanent loop
        seen = {inc.mask_of(state.current.black)}
        while True:
            event = improve_step(state)
            state.inner_iterations += 1
            if event is None:
                break
            if counts(state.current).min > counts(state.best).min:
                state.best = state.current
                done = reached()
                if done is not None:
                    return done
            bmask = inc.mask_of(state.current.black)
            if bmask in seen:
                break
            seen.add(bmask)
            if out_of_budget():
                break

        if out_of_budget() or (
            config.max_restarts is not None and state.restarts >= config.max_restarts
        ):
            return RunResult(
                state.best, False, state.restarts, state.inner_iterations,
                time.monotonic() - start,
            )

        state.restarts += 1
        state.current = random_init(config.board, state.rng)
        state.emit(
            SearchEvent(
                EventType.RESTARTED,
                counts(state.current),
                black=tuple(sorted(state.current.black)),
            )
        )
