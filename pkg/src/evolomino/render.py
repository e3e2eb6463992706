"""ASCII and SVG pictures of boards, optionally with a solution drawn in.

ASCII uses the board-file glyphs (``.`` white, ``#`` shaded, ``o`` pre-drawn),
``x`` for the squares of an overlaid solution and ``> v < ^`` on arrow tips
that would otherwise show as plain white cells.

The SVG follows the usual figure look: shaded cells filled light blue, squares
as inner boxes, each arrow a polyline through cell centres ending in a
triangular head.  Output is byte-for-byte deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .board import Board, BoardError, Cell, Solution

SHADE = "#bfe3f5"
INK = "#1f2a33"
ARROW = "#c0392b"

_TIP = {(0, 1): ">", (0, -1): "<", (1, 0): "v", (-1, 0): "^"}


@dataclass(frozen=True)
class RenderOptions:
    format: Literal["ascii", "svg"] = "ascii"
    cell_px: int = 24
    show_arrows: bool = True
    overlay: Solution | None = None

    def __post_init__(self):
        if self.cell_px <= 0:
            raise ValueError("cell_px must be positive")
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown render format {self.format!r}")


def _check_overlay(board: Board, sol: Solution | None):
    if sol is None:
        return
    for c in sol.squares:
        if not board.contains(c):
            raise BoardError(f"overlay square {c.row},{c.col} lies outside the {board.rows}x{board.cols} board")
        if c in board.shaded:
            raise BoardError(f"overlay square {c.row},{c.col} is on a shaded cell")


def render(board: Board, opts: RenderOptions = RenderOptions()) -> str:
    _check_overlay(board, opts.overlay)
    if opts.format == "ascii":
        return render_ascii(board, opts)
    return render_svg(board, opts)


def render_ascii(board: Board, opts: RenderOptions = RenderOptions()) -> str:
    squares = opts.overlay.squares if opts.overlay is not None else frozenset()
    tips = {}
    if opts.show_arrows:
        for a in board.arrows:
            (r0, c0), (r1, c1) = a.path[-2], a.path[-1]
            tips[a.tip] = _TIP[(r1 - r0, c1 - c0)]
    lines = []
    for r in range(1, board.rows + 1):
        row = []
        for c in range(1, board.cols + 1):
            cell = Cell(r, c)
            if cell in board.shaded:
                row.append("#")
            elif cell in squares:
                row.append("x")
            elif cell in board.predrawn:
                row.append("o")
            else:
                row.append(tips.get(cell, "."))
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def render_svg(board: Board, opts: RenderOptions = RenderOptions()) -> str:
    px = opts.cell_px
    w, h = board.cols * px, board.rows * px
    squares = set(board.predrawn)
    if opts.overlay is not None:
        squares |= opts.overlay.squares
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]
    for r in range(1, board.rows + 1):
        for c in range(1, board.cols + 1):
            fill = SHADE if Cell(r, c) in board.shaded else "white"
            out.append(
                f'<rect x="{(c - 1) * px}" y="{(r - 1) * px}" width="{px}" height="{px}" '
                f'fill="{fill}" stroke="{INK}" stroke-width="0.5"/>'
            )
    inset = px / 6
    for cell in sorted(squares):
        out.append(
            f'<rect x="{_num((cell.col - 1) * px + inset)}" y="{_num((cell.row - 1) * px + inset)}" '
            f'width="{_num(px - 2 * inset)}" height="{_num(px - 2 * inset)}" '
            f'fill="none" stroke="{INK}" stroke-width="{_num(px / 12)}"/>'
        )
    if opts.show_arrows:
        for a in board.arrows:
            pts = [((c.col - 0.5) * px, (c.row - 0.5) * px) for c in a.path]
            out.append(
                '<polyline points="' + " ".join(f"{_num(x)},{_num(y)}" for x, y in pts) + '" '
                f'fill="none" stroke="{ARROW}" stroke-width="{_num(px / 16)}"/>'
            )
            out.append(_head(pts[-2], pts[-1], px))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _head(p, q, px) -> str:
    dx, dy = (q[0] - p[0]) / px, (q[1] - p[1]) / px
    ux, uy = -dy, dx  # unit normal
    s = px / 4
    tip = (q[0] + dx * s, q[1] + dy * s)
    a = (q[0] + ux * s * 0.6, q[1] + uy * s * 0.6)
    b = (q[0] - ux * s * 0.6, q[1] - uy * s * 0.6)
    pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in (tip, a, b))
    return f'<polygon points="{pts}" fill="{ARROW}"/>'


def _num(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s
