"""Closed test boards around single gadgets.

A gadget tile on its own has dangling ports, so each fixture feeds it from
variable drivers and closes every output with a cap.  The variable fixture
(driver, negation, cap) contains the Fig. 2 board verbatim, and its upper part
is the Fig. 3 board, so it serves as both the variable and the negation
fixture.

``clause_fixture`` pins each driver to one value by deciding the two probe
cells below its start square: shaded for true, pre-drawn for false.
"""

from __future__ import annotations

from dataclasses import replace

from ..board import Board, Cell
from .compose import Composition, Unit, compose
from .reduction import PROBES, VariableProbe


def variable_fixture() -> Composition:
    return compose([
        [Unit("variable", "v", (), ("a",))],
        [Unit("negation", "n", ("a",), ("b",))],
        [Unit("cap", "c", ("b",))],
    ])


negation_fixture = variable_fixture


def split_fixture() -> Composition:
    return compose([
        [Unit("variable", "v", (), ("a",), pad=1)],
        [Unit("split", "s", ("a",), ("l", "r"))],
        [Unit("cap", "c1", ("l",)), Unit("cap", "c2", ("r",), pad=-2)],
    ])


def crossover_fixture() -> Composition:
    return compose([
        [Unit("variable", "v1", (), ("a",), pad=2), Unit("variable", "v2", (), ("b",), pad=-2)],
        [Unit("crossover", "x", ("a", "b"), ("b", "a"))],
        [Unit("cap", "c1", ("b",), pad=4), Unit("cap", "c2", ("a",), pad=-2)],
    ])


def clause_fixture(inputs: tuple[bool, bool, bool] | None = None) -> Composition:
    """Three drivers into one clause gadget; ``inputs`` forces their values."""
    comp = compose([
        [
            Unit("variable", "v1", (), ("a",)),
            Unit("variable", "v2", (), ("b",), pad=-2),
            Unit("variable", "v3", (), ("c",), pad=-2),
        ],
        [Unit("clause", "k", ("a", "b", "c"))],
    ])
    if inputs is None:
        return comp
    return force(comp, dict(zip(("v1", "v2", "v3"), inputs)))


def force(comp: Composition, values: dict[str, bool]) -> Composition:
    """Pin driver units to truth values by deciding their probe cells."""
    b = comp.board
    shaded, predrawn = set(b.shaded), set(b.predrawn)
    for ident, value in values.items():
        cells = {comp.to_global(ident, c) for c in PROBES}
        (shaded if value else predrawn).update(cells)
    board = Board(b.rows, b.cols, frozenset(shaded), frozenset(predrawn), b.arrows)
    return replace(comp, board=board)


def driver_probes(board: Board) -> tuple[VariableProbe, ...]:
    """Decode map for a board drawn by hand, such as the Fig. 7 example.

    A driver is an arrow whose start square has exactly two free white cells
    straight below it and then the fence.  Drivers are numbered left to right.
    """
    found = []
    for a in board.arrows:
        s = a.start
        below = [Cell(s.row + 1, s.col), Cell(s.row + 2, s.col)]
        fence = Cell(s.row + 3, s.col)
        if a.path[1] != Cell(s.row - 1, s.col):
            continue
        if not all(board.is_white(c) and board.arrow_of(c) is None and c not in board.predrawn
                   for c in below):
            continue
        if board.is_white(fence):
            continue
        found.append(below)
    found.sort(key=lambda cells: cells[0].col)
    return tuple(VariableProbe(i, tuple(cells), (0, 0), (1, 1)) for i, cells in enumerate(found, 1))
