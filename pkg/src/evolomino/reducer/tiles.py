"""Gadget templates, loaded from the transcribed figure boards.

A template is a rectangular patch plus arrow fragments.  Signals always flow
upward.  An *in-port* fragment starts on the tile's bottom row and ends at the
tip where the incoming wire stops; an *out-port* fragment starts at the cell
where a new wire begins and leaves through the tile's top row.  Arrows that
neither enter nor leave the tile are internal.

Every port follows the same lock convention.  Below an out-port start ``s`` the
producer leaves room for a start block of one square (true) or three squares
(false); above an in-port tip ``e`` the consumer holds ``e-1`` pre-drawn, a
white cell and then a pre-drawn *link* square that joins the consumer when the
signal is true and the wire's four-square end block when it is false.

White cells that cannot reach any arrow inside the tile (the published figures draw a
few, such as the corners of the crossover) are shaded on load.  A block there
could never touch an arrow, so this changes no solution count but keeps the
composed boards small.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources

from ..board import Arrow, Board, Cell, components, grid_cells, parse_board

KINDS = ("variable", "negation", "split", "clause", "crossover", "wire-segment", "cap", "terminator")


@dataclass(frozen=True)
class Port:
    name: str
    path: tuple[Cell, ...]

    @property
    def col(self) -> int:
        return self.path[0].col


@dataclass(frozen=True)
class GadgetTemplate:
    kind: str
    rows: int
    cols: int
    shaded: frozenset[Cell]
    predrawn: frozenset[Cell]
    arrows: tuple[Arrow, ...]
    ins: tuple[Port, ...]
    outs: tuple[Port, ...]
    source: str

    @cached_property
    def white(self) -> frozenset[Cell]:
        return frozenset(grid_cells(self.rows, self.cols)).difference(self.shaded)

    def as_board(self) -> Board:
        """The tile on its own, port fragments included as (short) arrows."""
        arrows = list(self.arrows)
        for p in self.ins + self.outs:
            if len(p.path) >= 2:
                arrows.append(Arrow(p.path))
        return Board(self.rows, self.cols, self.shaded, self.predrawn, tuple(arrows))


def read_data(name: str) -> str:
    return resources.files("evolomino").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def _crop(board: Board, top: int, bottom: int) -> Board:
    keep = lambda c: top <= c.row <= bottom  # noqa: E731
    move = lambda c: Cell(c.row - top + 1, c.col)  # noqa: E731
    arrows = []
    for a in board.arrows:
        part = [move(c) for c in a.path if keep(c)]
        if len(part) >= 2:
            arrows.append(Arrow(tuple(part)))
    return Board(
        bottom - top + 1,
        board.cols,
        frozenset(move(c) for c in board.shaded if keep(c)),
        frozenset(move(c) for c in board.predrawn if keep(c)),
        tuple(arrows),
    )


def _template(kind: str, board: Board, source: str, in_names=(), out_names=()) -> GadgetTemplate:
    ins, outs, internal = [], [], []
    for a in board.arrows:
        if a.start.row == board.rows:
            ins.append(a.path)
        elif a.tip.row == 1:
            outs.append(a.path)
        else:
            internal.append(a)
    ins.sort(key=lambda p: p[0].col)
    outs.sort(key=lambda p: p[-1].col)
    live_seed = {c for a in board.arrows for c in a.path} | board.predrawn
    shaded = set(board.shaded)
    for comp in components(board.white):
        if not comp & live_seed:
            shaded |= comp
    names_in = in_names or [f"in{i + 1}" for i in range(len(ins))]
    names_out = out_names or [f"out{i + 1}" for i in range(len(outs))]
    return GadgetTemplate(
        kind,
        board.rows,
        board.cols,
        frozenset(shaded),
        board.predrawn,
        tuple(internal),
        tuple(Port(n, p) for n, p in zip(names_in, ins)),
        tuple(Port(n, p) for n, p in zip(names_out, outs)),
        source,
    )


# The cap terminates a wire whose start block is already pinned to one or three
# squares: above the tip there is room for the two- or four-square end block
# and nothing else.
_CAP = """\
evolomino 1
size 5 3
grid
###
#.#
#.#
#o#
#.#
arrows 0
"""


@lru_cache(maxsize=None)
def template(kind: str) -> GadgetTemplate:
    if kind == "variable":
        # The driver is the bottom of the Fig. 2 board: the pre-drawn start
        # square, two free cells below it and the fence row.
        fig = parse_board(read_data("fig2_drawn.board"))
        return _template(kind, _crop(fig, fig.rows - 4, fig.rows), "fig2_drawn.board", (), ("x",))
    if kind == "negation":
        return _template(kind, parse_board(read_data("fig3_negation.board")),
                         "fig3_negation.board", ("x",), ("not_x",))
    if kind == "split":
        return _template(kind, parse_board(read_data("fig4_split.board")),
                         "fig4_split.board", ("x",), ("x_left", "x_right"))
    if kind == "clause":
        return _template(kind, parse_board(read_data("fig5_clause.board")),
                         "fig5_clause.board", ("x", "y", "z"), ())
    if kind == "crossover":
        # Inputs enter at columns 4 and 6; the left input leaves on the right.
        return _template(kind, parse_board(read_data("fig6_crossover.board")),
                         "fig6_crossover.board", ("a", "b"), ("b", "a"))
    if kind == "cap":
        b = parse_board(_CAP)
        return GadgetTemplate(kind, b.rows, b.cols, b.shaded, b.predrawn, (),
                              (Port("x", (Cell(5, 2),)),), (), "cap")
    if kind == "terminator":
        # Swallows the signal of a variable that occurs in no clause: the
        # negation pins the driver's start block, the cap closes its output.
        neg, cap = template("negation"), template("cap")
        down = lambda c: Cell(c.row + cap.rows, c.col)  # noqa: E731
        out = neg.outs[0].path
        inner = Arrow(tuple(down(c) for c in out) + cap.ins[0].path)
        return GadgetTemplate(
            kind,
            cap.rows + neg.rows,
            neg.cols,
            cap.shaded | frozenset(down(c) for c in neg.shaded),
            cap.predrawn | frozenset(down(c) for c in neg.predrawn),
            (inner,),
            tuple(Port(p.name, tuple(down(c) for c in p.path)) for p in neg.ins),
            (),
            "fig3_negation.board+cap",
        )
    if kind == "wire-segment":
        return GadgetTemplate(kind, 1, 3, frozenset({Cell(1, 1), Cell(1, 3)}), frozenset(), (),
                              (Port("x", (Cell(1, 2),)),), (Port("x", (Cell(1, 2),)),),
                              "wire-segment")
    raise KeyError(f"unknown gadget kind {kind!r}")
