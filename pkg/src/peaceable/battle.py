"""Battles: two disjoint armies on one board, and the peace predicate.

A battle is peaceful when no line of the board carries both colors.  The
check tallies each color per line, so it costs O(n^2 + #lines) regardless
of how the armies interleave.

`hat(board, X)` is the set of cells that share no line with X.  The pair
(X, hat(X)) is always peaceful, and hat is antitone: growing X can only
shrink hat(X).  Swapping on a line e replaces (B, W) by (B \\ e, hat(B \\ e)),
which is again peaceful; this is the move the local search is built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .board import (
    Board,
    Cell,
    LineKind,
    LineRef,
    Topology,
    check_cell,
    check_line,
    cells_of_line,
    incidence,
)


@dataclass(frozen=True)
class Battle:
    board: Board
    black: frozenset[Cell]
    white: frozenset[Cell]


class Counts(NamedTuple):
    black: int
    white: int
    min: int


@dataclass(frozen=True)
class Verdict:
    peaceful: bool
    line: Optional[LineRef] = None
    black_cell: Optional[Cell] = None
    white_cell: Optional[Cell] = None


def make_battle(board: Board, black: Iterable[Cell], white: Iterable[Cell]) -> Battle:
    b = frozenset((int(i), int(j)) for i, j in black)
    w = frozenset((int(i), int(j)) for i, j in white)
    for cell in b:
        check_cell(board, cell)
    for cell in w:
        check_cell(board, cell)
    overlap = b & w
    if overlap:
        raise ValueError(f"armies overlap at {sorted(overlap)[:3]}")
    return Battle(board, b, w)


def counts(battle: Battle) -> Counts:
    nb, nw = len(battle.black), len(battle.white)
    return Counts(nb, nw, min(nb, nw))


def _line_slots(board: Board) -> tuple[int, int, int]:
    """(diag offset, skew offset, slots per diagonal kind) for tally arrays."""
    n = board.n
    if board.topology is Topology.TORUS:
        return 0, 0, n
    return n - 1, -2, 2 * n - 1


def _tally(board: Board, army: frozenset[Cell]):
    n = board.n
    doff, soff, dslots = _line_slots(board)
    rows = [0] * (n + 1)
    cols = [0] * (n + 1)
    diags = [0] * dslots
    skews = [0] * dslots
    torus = board.topology is Topology.TORUS
    for (i, j) in army:
        rows[i] += 1
        cols[j] += 1
        if torus:
            diags[(i - j) % n] += 1
            skews[(i + j) % n] += 1
        else:
            diags[i - j + doff] += 1
            skews[i + j + soff] += 1
    return rows, cols, diags, skews


def is_peaceful(battle: Battle) -> Verdict:
    """Check the battle; on failure report the lexicographically least
    offending line (ROW < COL < DIAG < SKEW, then index) with one cell of
    each color on it."""
    board = battle.board
    n = board.n
    doff, soff, _ = _line_slots(board)
    br, bc, bd, bs = _tally(board, battle.black)
    wr, wc, wd, ws = _tally(board, battle.white)

    offender: Optional[LineRef] = None
    for i in range(1, n + 1):
        if br[i] and wr[i]:
            offender = LineRef(LineKind.ROW, i)
            break
    if offender is None:
        for j in range(1, n + 1):
            if bc[j] and wc[j]:
                offender = LineRef(LineKind.COL, j)
                break
    if offender is None:
        for slot in range(len(bd)):
            if bd[slot] and wd[slot]:
                offender = LineRef(LineKind.DIAG, slot - doff)
                break
    if offender is None:
        for slot in range(len(bs)):
            if bs[slot] and ws[slot]:
                offender = LineRef(LineKind.SKEW, slot - soff)
                break
    if offender is None:
        return Verdict(True)
    on_line = cells_of_line(board, offender)
    return Verdict(
        False,
        offender,
        min(battle.black & on_line),
        min(battle.white & on_line),
    )


def hat(board: Board, army: Iterable[Cell]) -> frozenset[Cell]:
    """Cells that lie on no line meeting `army`."""
    inc = incidence(board)
    mask = 0
    for cell in army:
        check_cell(board, cell)
        mask |= 1 << inc.cell_bit(cell)
    free = inc.full_mask & ~inc.attacked_mask(mask)
    return frozenset(inc.cells_of(free))


def hat_mask(board: Board, army_mask: int) -> int:
    """Bitboard form of hat, for callers already working in masks."""
    inc = incidence(board)
    return inc.full_mask & ~inc.attacked_mask(army_mask)


def swap_on(battle: Battle, line: LineRef) -> Battle:
    """Swap on a line: drop black's cells on it, then grow white to hat(B).

    The result is peaceful whatever the input was, because any pair
    (X, hat(X)) is peaceful.
    """
    check_line(battle.board, line)
    new_black = battle.black - cells_of_line(battle.board, line)
    return Battle(battle.board, new_black, hat(battle.board, new_black))
