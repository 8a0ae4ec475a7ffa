"""Deterministic SVG diagrams of battles.

Output is assembled from integer geometry and a fixed palette, one rect per
cell in row-major order, so identical battles always serialize to identical
bytes.
"""

from __future__ import annotations

from .battle import Battle

CELL = 20  # px
MARGIN = 10  # px

FILL_EMPTY = "#f3efe2"
FILL_BLACK = "#35332f"
FILL_WHITE = "#fffdf4"
STROKE = "#a39c8a"


def render_svg(battle: Battle) -> str:
    n = battle.board.n
    side = 2 * MARGIN + n * CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{side}" '
        f'height="{side}" viewBox="0 0 {side} {side}">',
        f'<rect x="0" y="0" width="{side}" height="{side}" fill="{FILL_EMPTY}"/>',
    ]
    black = battle.black
    white = battle.white
    for i in range(1, n + 1):
        y = MARGIN + (i - 1) * CELL
        for j in range(1, n + 1):
            x = MARGIN + (j - 1) * CELL
            cell = (i, j)
            if cell in black:
                fill = FILL_BLACK
            elif cell in white:
                fill = FILL_WHITE
            else:
                fill = FILL_EMPTY
            parts.append(
                f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                f'fill="{fill}" stroke="{STROKE}" stroke-width="1"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
