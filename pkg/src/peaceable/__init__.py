"""Peaceable queens workbench.

Two armies of queens share an n x n board (plain grid or torus); no queen
may see a queen of the other color along a row, column, diagonal, or
skew-diagonal.  The package carries constructions that place large armies,
a swap-based local search, an exact branch-and-bound solver for small
boards, nonlinear density-bound models, and file/SVG/HTTP front ends.
"""

from .battle import (
    Battle,
    Counts,
    Verdict,
    counts,
    hat,
    hat_mask,
    is_peaceful,
    make_battle,
    swap_on,
)
from .board import (
    Board,
    LineKind,
    LineRef,
    Topology,
    lines,
    make_board,
    parse_line,
)
from .constructions import ainley, argyle, best_plaid, plaid
from .exact import exact_value
from .swap_search import SearchConfig, run

__all__ = [
    "Battle",
    "Board",
    "Counts",
    "LineKind",
    "LineRef",
    "SearchConfig",
    "Topology",
    "Verdict",
    "ainley",
    "argyle",
    "best_plaid",
    "counts",
    "exact_value",
    "hat",
    "hat_mask",
    "is_peaceful",
    "lines",
    "make_battle",
    "make_board",
    "parse_line",
    "plaid",
    "run",
    "swap_on",
]

__version__ = "0.1.0"
