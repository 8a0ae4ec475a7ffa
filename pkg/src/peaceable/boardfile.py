"""Plain-text battle files.

A board file is a header line ``<topology> <n>`` (topology is ``grid`` or
``torus``) followed by exactly n rows of n characters, row 1 first, column
1 leftmost: ``.`` empty, ``B`` black, ``W`` white.  The format is strict so
that parse(serialize(battle)) == battle holds bit-exactly.
"""

from __future__ import annotations

from .battle import Battle, make_battle
from .board import Cell, Topology, make_board

_GLYPHS = {".", "B", "W"}


def serialize(battle: Battle) -> str:
    n = battle.board.n
    grid = [["."] * n for _ in range(n)]
    for i, j in battle.black:
        grid[i - 1][j - 1] = "B"
    for i, j in battle.white:
        grid[i - 1][j - 1] = "W"
    lines = [f"{battle.board.topology.value} {n}"]
    lines.extend("".join(row) for row in grid)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Battle:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty board file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"bad header {lines[0]!r}, want '<topology> <n>'")
    topo_name, n_text = header
    try:
        topology = Topology(topo_name)
    except ValueError:
        raise ValueError(f"unknown topology {topo_name!r}") from None
    try:
        n = int(n_text)
    except ValueError:
        raise ValueError(f"bad board size {n_text!r}") from None
    board = make_board(n, topology)
    rows = lines[1:]
    if len(rows) != n:
        raise ValueError(f"want {n} rows, got {len(rows)}")
    black: list[Cell] = []
    white: list[Cell] = []
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise ValueError(f"row {i} has length {len(row)}, want {n}")
        for j, ch in enumerate(row, start=1):
            if ch not in _GLYPHS:
                raise ValueError(f"bad character {ch!r} at row {i} col {j}")
            if ch == "B":
                black.append((i, j))
            elif ch == "W":
                white.append((i, j))
    return make_battle(board, black, white)


def load(path: str) -> Battle:
    with open(path, encoding="ascii") as fh:
        return parse(fh.read())


def save(battle: Battle, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize(battle))
