"""Boards and their lines.

A board is the n x n grid or the n x n torus.  Cells are 1-based (row, col)
pairs.  Four kinds of lines run through every cell: its row, its column, its
diagonal (constant i - j) and its skew-diagonal (constant i + j).  On the
torus the two diagonal kinds wrap modulo n, so every line has exactly n
cells; on the grid diagonals are the usual segments of 1..n cells.

Line indices:

    kind   grid                torus
    ROW    i in [1, n]         i in [1, n]
    COL    j in [1, n]         j in [1, n]
    DIAG   i - j in [-(n-1), n-1]    (i - j) mod n in [0, n-1]
    SKEW   i + j in [2, 2n]          (i + j) mod n in [0, n-1]

On an even torus the diagonal kinds split into two parity classes: every
cell of a DIAG line has the same (i - j) mod 2, which equals the line index
mod 2 (and likewise for SKEW with i + j).  The classes are named CLASS0 and
CLASS1 after that residue.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum, IntEnum

Cell = tuple[int, int]


class Topology(str, Enum):
    GRID = "grid"
    TORUS = "torus"


class LineKind(IntEnum):
    # Order is load-bearing: witness selection and swap scans use
    # ROW < COL < DIAG < SKEW, then ascending index.
    ROW = 0
    COL = 1
    DIAG = 2
    SKEW = 3


class ParityClass(IntEnum):
    CLASS0 = 0
    CLASS1 = 1


@dataclass(frozen=True, order=True)
class LineRef:
    kind: LineKind
    index: int

    def __str__(self) -> str:
        return f"{self.kind.name.lower()} {self.index}"


def parse_line(text: str) -> LineRef:
    """Inverse of str(LineRef): 'row 3' -> LineRef(LineKind.ROW, 3)."""
    parts = text.split()
    if len(parts) != 2 or parts[0].upper() not in LineKind.__members__:
        raise ValueError(f"bad line {text!r}, want e.g. 'row 3' or 'diag -2'")
    try:
        index = int(parts[1])
    except ValueError:
        raise ValueError(f"bad line index in {text!r}") from None
    return LineRef(LineKind[parts[0].upper()], index)


@dataclass(frozen=True)
class Board:
    n: int
    topology: Topology


def make_board(n: int, topology: Topology | str) -> Board:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"board size must be a positive integer, got {n!r}")
    return Board(n, Topology(topology))


def cells(board: Board) -> list[Cell]:
    """All n*n cells in lexicographic (row, col) order."""
    n = board.n
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def is_cell(board: Board, cell: Cell) -> bool:
    i, j = cell
    return 1 <= i <= board.n and 1 <= j <= board.n


def check_cell(board: Board, cell: Cell) -> None:
    if not is_cell(board, cell):
        raise ValueError(f"cell {cell!r} is outside the {board.n}x{board.n} board")


def _diag_range(board: Board) -> range:
    n = board.n
    if board.topology is Topology.TORUS:
        return range(0, n)
    return range(-(n - 1), n)


def _skew_range(board: Board) -> range:
    n = board.n
    if board.topology is Topology.TORUS:
        return range(0, n)
    return range(2, 2 * n + 1)


def lines(board: Board) -> list[LineRef]:
    """Every line of the board: 4n on the torus, 6n - 2 on the grid."""
    n = board.n
    out = [LineRef(LineKind.ROW, i) for i in range(1, n + 1)]
    out += [LineRef(LineKind.COL, j) for j in range(1, n + 1)]
    out += [LineRef(LineKind.DIAG, k) for k in _diag_range(board)]
    out += [LineRef(LineKind.SKEW, k) for k in _skew_range(board)]
    return out


def is_line(board: Board, line: LineRef) -> bool:
    if line.kind in (LineKind.ROW, LineKind.COL):
        return 1 <= line.index <= board.n
    if line.kind is LineKind.DIAG:
        return line.index in _diag_range(board)
    if line.kind is LineKind.SKEW:
        return line.index in _skew_range(board)
    return False


def check_line(board: Board, line: LineRef) -> None:
    if not isinstance(line.kind, LineKind):
        raise ValueError(f"bad line kind {line.kind!r}")
    if not is_line(board, line):
        raise ValueError(f"line {line} does not exist on this board")


def cells_of_line(board: Board, line: LineRef) -> frozenset[Cell]:
    check_line(board, line)
    n = board.n
    k = line.index
    if line.kind is LineKind.ROW:
        return frozenset((k, j) for j in range(1, n + 1))
    if line.kind is LineKind.COL:
        return frozenset((i, k) for i in range(1, n + 1))
    if board.topology is Topology.TORUS:
        if line.kind is LineKind.DIAG:
            return frozenset((i, (i - 1 - k) % n + 1) for i in range(1, n + 1))
        return frozenset((i, (k - i - 1) % n + 1) for i in range(1, n + 1))
    if line.kind is LineKind.DIAG:
        lo, hi = max(1, 1 + k), min(n, n + k)
        return frozenset((i, i - k) for i in range(lo, hi + 1))
    lo, hi = max(1, k - n), min(n, k - 1)
    return frozenset((i, k - i) for i in range(lo, hi + 1))


def lines_through(board: Board, cell: Cell) -> list[LineRef]:
    """The four lines through a cell, in kind order."""
    check_cell(board, cell)
    i, j = cell
    if board.topology is Topology.TORUS:
        d, s = (i - j) % board.n, (i + j) % board.n
    else:
        d, s = i - j, i + j
    return [
        LineRef(LineKind.ROW, i),
        LineRef(LineKind.COL, j),
        LineRef(LineKind.DIAG, d),
        LineRef(LineKind.SKEW, s),
    ]


def line_size(board: Board, line: LineRef) -> int:
    check_line(board, line)
    n = board.n
    if board.topology is Topology.TORUS or line.kind in (LineKind.ROW, LineKind.COL):
        return n
    if line.kind is LineKind.DIAG:
        return n - abs(line.index)
    return min(line.index - 1, 2 * n + 1 - line.index)


def line_intersection_size(board: Board, e: LineRef, f: LineRef) -> int:
    """|e ∩ f| as a cell count.

    Torus intersections follow a closed form: lines of the same kind are
    equal or disjoint; a row or column meets any line of another kind once;
    a DIAG meets a SKEW once when n is odd, and on an even torus twice when
    the indices share a parity and never otherwise.  Grid intersections are
    irregular near the edges, so the grid path counts the actual cells.
    """
    check_line(board, e)
    check_line(board, f)
    if e == f:
        return line_size(board, e)
    if board.topology is Topology.GRID:
        return len(cells_of_line(board, e) & cells_of_line(board, f))
    if e.kind == f.kind:
        return 0
    a, b = (e, f) if e.kind <= f.kind else (f, e)
    if a.kind in (LineKind.ROW, LineKind.COL):
        return 1
    # DIAG x SKEW: 2i = d + s (mod n) has one solution for odd n,
    # two or zero for even n depending on the parity of d + s.
    if board.n % 2 == 1:
        return 1
    return 2 if (a.index + b.index) % 2 == 0 else 0


def parity_class(board: Board, line: LineRef) -> ParityClass:
    """Parity class of a DIAG or SKEW line on an even torus."""
    check_line(board, line)
    if board.topology is not Topology.TORUS or board.n % 2 != 0:
        raise ValueError("parity classes exist only on even tori")
    if line.kind not in (LineKind.DIAG, LineKind.SKEW):
        raise ValueError("parity classes apply to DIAG and SKEW lines only")
    return ParityClass(line.index % 2)


class Incidence:
    """Bitboard view of a board, shared by the battle and search code.

    Cells map to bit positions in lexicographic order:
    (i, j) -> (i - 1) * n + (j - 1).  Line masks are built once per board.
    """

    def __init__(self, board: Board):
        n = board.n
        self.board = board
        self.ncells = n * n
        self.full_mask = (1 << self.ncells) - 1
        self.lines: list[LineRef] = lines(board)
        self.line_pos: dict[LineRef, int] = {e: p for p, e in enumerate(self.lines)}
        self.line_masks: list[int] = []
        for e in self.lines:
            m = 0
            for (i, j) in cells_of_line(board, e):
                m |= 1 << ((i - 1) * n + (j - 1))
            self.line_masks.append(m)
        # positions of the 4 lines through each cell, by cell bit index
        self.cell_lines: list[tuple[int, int, int, int]] = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                refs = lines_through(board, (i, j))
                self.cell_lines.append(tuple(self.line_pos[r] for r in refs))

    def cell_bit(self, cell: Cell) -> int:
        i, j = cell
        return (i - 1) * self.board.n + (j - 1)

    def mask_of(self, cs) -> int:
        n = self.board.n
        m = 0
        for (i, j) in cs:
            m |= 1 << ((i - 1) * n + (j - 1))
        return m

    def cells_of(self, mask: int) -> list[Cell]:
        n = self.board.n
        out = []
        base = 0
        while mask:
            word = mask & 0xFFFFFFFFFFFFFFFF
            while word:
                low = word & -word
                b = base + low.bit_length() - 1
                out.append((b // n + 1, b % n + 1))
                word ^= low
            mask >>= 64
            base += 64
        return out

    def lines_meeting(self, mask: int) -> list[int]:
        """Positions of all lines that contain at least one set bit."""
        return [p for p, lm in enumerate(self.line_masks) if lm & mask]

    def attacked_mask(self, mask: int) -> int:
        """Union of every line meeting `mask`."""
        a = 0
        for lm in self.line_masks:
            if lm & mask:
                a |= lm
        return a


@functools.lru_cache(maxsize=64)
def incidence(board: Board) -> Incidence:
    return Incidence(board)
