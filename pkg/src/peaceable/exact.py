"""Exact optimum armies by branch and bound.

The search decides, cell by cell in lexicographic order, whether each cell
joins the black army.  White never needs its own branching: for any black
army B the best companion is hat(B), so the optimum equals

    max over B of min(|B|, |hat(B)|).

At a node with k cells decided, the achievable value is at most
min(|B| + remaining, |hat(B)|), because black can only grow by the cells
not yet decided while hat only shrinks.  Nodes whose bound does not beat
the incumbent are cut.

Symmetry: the first cell placed in B may be restricted to cells that are
lexicographic minima of their orbit under the board's symmetry group (the
8 dihedral maps on the grid, those plus all translations on the torus).
Any army can be mapped by some symmetry so that its least cell is such a
minimum, so the restriction never loses the optimum.  On the torus this
pins the first black cell to (1, 1).

Desk scale: grid boards to n = 8 and torus boards to n = 9 finish within
the default node budget; the n >= 8 cases take minutes, not seconds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .battle import Battle, make_battle
from .board import Board, Cell, Topology, incidence, make_board

DEFAULT_NODE_BUDGET = 10 ** 9


@dataclass(frozen=True)
class ExactResult:
    board: Board
    value: int
    witness: Battle
    nodes: int
    elapsed: float
    complete: bool  # False when the node budget ran out first


def _symmetries(board: Board):
    """The board's cell automorphisms as callables on 0-based (i, j)."""
    n = board.n
    flips = [
        lambda i, j: (i, j),
        lambda i, j: (j, i),
        lambda i, j: (n - 1 - i, j),
        lambda i, j: (j, n - 1 - i),
        lambda i, j: (i, n - 1 - j),
        lambda i, j: (n - 1 - j, i),
        lambda i, j: (n - 1 - i, n - 1 - j),
        lambda i, j: (n - 1 - j, n - 1 - i),
    ]
    if board.topology is Topology.GRID:
        return flips
    maps = []
    for f in flips:
        for di in range(n):
            for dj in range(n):
                maps.append(lambda i, j, f=f, di=di, dj=dj: f((i + di) % n, (j + dj) % n))
    return maps


def _first_cell_allowed(board: Board) -> list[bool]:
    """allowed[bit] == True when the cell is the lex minimum of its orbit."""
    n = board.n
    maps = _symmetries(board)
    allowed = []
    for i in range(n):
        for j in range(n):
            best = min(m(i, j) for m in maps)
            allowed.append(best == (i, j))
    return allowed


class _Budget(Exception):
    pass


def exact_value(
    board: Board,
    node_budget: int = DEFAULT_NODE_BUDGET,
    cell_order: Optional[Sequence[Cell]] = None,
) -> ExactResult:
    """Best possible min(|B|, |W|) on the board, with a witness battle.

    `cell_order` overrides the lexicographic branching order; the value is
    order-invariant, so this exists for tests.  When the node budget runs
    out the incumbent comes back with complete=False; it is a lower bound,
    not a verified optimum.
    """
    inc = incidence(board)
    n = board.n
    ncells = n * n
    start = time.monotonic()

    if cell_order is None:
        order = list(range(ncells))
        symmetry = True
    else:
        order = [inc.cell_bit(c) for c in cell_order]
        if sorted(order) != list(range(ncells)):
            raise ValueError("cell_order must enumerate every cell exactly once")
        # a custom order breaks the lex-minimum argument, so play it safe
        symmetry = False

    closure = []
    for bit in range(ncells):
        m = 0
        for pos in inc.cell_lines[bit]:
            m |= inc.line_masks[pos]
        closure.append(m)

    allowed_first = _first_cell_allowed(board) if symmetry else [True] * ncells
    full = inc.full_mask

    best_value = 0
    best_black = 0
    best_hat = full
    nodes = 0

    def visit(pos: int, bmask: int, bcount: int, attacked: int, placed: bool):
        nonlocal best_value, best_black, best_hat, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Budget
        hat_count = ncells - attacked.bit_count()
        value = min(bcount, hat_count)
        if value > best_value:
            best_value, best_black, best_hat = value, bmask, full & ~attacked
        if pos == ncells:
            return
        if min(bcount + (ncells - pos), hat_count) <= best_value:
            return
        bit = order[pos]
        if placed or allowed_first[bit]:
            visit(
                pos + 1,
                bmask | (1 << bit),
                bcount + 1,
                attacked | closure[bit],
                True,
            )
        visit(pos + 1, bmask, bcount, attacked, placed)

    complete = True
    try:
        visit(0, 0, 0, 0, False)
    except _Budget:
        complete = False

    black = sorted(inc.cells_of(best_black))[:best_value]
    white = sorted(inc.cells_of(best_hat))[:best_value]
    witness = make_battle(board, black, white)
    return ExactResult(
        board, best_value, witness, nodes, time.monotonic() - start, complete
    )


@dataclass(frozen=True)
class OrderingReport:
    grid_values: dict[int, int]
    torus_values: dict[int, int]
    t8: Optional[int] = None
    t9: Optional[int] = None


def verify_ordering_facts(
    max_n: int = 7,
    include_t89: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> OrderingReport:
    """Exact sweeps plus the ordering sanity checks.

    Asserts that the grid value dominates the torus value at every size,
    that the grid sequence never decreases (a grid battle embeds in the
    next size up), and optionally that the torus value drops from n = 8 to
    n = 9 (wrap-around diagonals bite harder at odd sizes).  Any violation
    raises, since it would mean the solver itself is broken.
    """
    grid_values: dict[int, int] = {}
    torus_values: dict[int, int] = {}
    for n in range(1, max_n + 1):
        g = exact_value(make_board(n, Topology.GRID), node_budget)
        t = exact_value(make_board(n, Topology.TORUS), node_budget)
        if not (g.complete and t.complete):
            raise RuntimeError(f"node budget too small for exact sweep at n={n}")
        grid_values[n] = g.value
        torus_values[n] = t.value
        if g.value < t.value:
            raise AssertionError(f"grid optimum below torus optimum at n={n}")
    for n in range(2, max_n + 1):
        if grid_values[n] < grid_values[n - 1]:
            raise AssertionError(f"grid optimum decreased from n={n - 1} to n={n}")

    t8 = t9 = None
    if include_t89:
        for n in (8, 9):
            if n <= max_n:
                continue
            r = exact_value(make_board(n, Topology.TORUS), node_budget)
            if not r.complete:
                raise RuntimeError(f"node budget too small for torus n={n}")
            torus_values[n] = r.value
        t8, t9 = torus_values[8], torus_values[9]
        if not t8 > t9:
            raise AssertionError(f"expected torus optimum to drop 8 -> 9, got {t8} <= {t9}")
    return OrderingReport(grid_values, torus_values, t8, t9)


def make_board(n: int, topology: Topology) -> Board:
    # tiny alias so the sweep reads clearly
    return Board(n, topology)
