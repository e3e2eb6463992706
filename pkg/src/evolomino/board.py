"""Puzzle data model: boards, solutions, blocks and translation-only shapes.

Coordinates are ``(row, col)`` pairs, 1-based, with row 1 at the top of the
board.  Figures drawn with the y axis pointing up must be flipped once when
they are transcribed (``row = rows + 1 - y``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product, repeat
from operator import itemgetter
from typing import Iterable, NamedTuple


class Cell(NamedTuple):
    row: int
    col: int

    def neighbours(self) -> tuple["Cell", "Cell", "Cell", "Cell"]:
        r, c = self
        return (Cell(r - 1, c), Cell(r + 1, c), Cell(r, c - 1), Cell(r, c + 1))


def grid_cells(rows: int, cols: int):
    """Every cell of a rows x cols board in reading order (fast path)."""
    return map(tuple.__new__, repeat(Cell), product(range(1, rows + 1), range(1, cols + 1)))


def _cells(items) -> frozenset:
    if isinstance(items, frozenset) and set(map(type, items)) <= {Cell}:
        return items
    return frozenset(c if type(c) is Cell else Cell(*c) for c in items)


class BoardError(ValueError):
    """Raised for malformed board or solution documents and invalid boards."""


@dataclass(frozen=True)
class Arrow:
    path: tuple[Cell, ...]

    def __post_init__(self):
        path = tuple(Cell(*c) for c in self.path)
        object.__setattr__(self, "path", path)
        if len(path) < 2:
            raise BoardError("arrow must visit at least 2 cells")
        if len(set(path)) != len(path):
            raise BoardError(f"arrow visits a cell twice: {_fmt_path(path)}")
        for a, b in zip(path, path[1:]):
            if abs(a.row - b.row) + abs(a.col - b.col) != 1:
                raise BoardError(f"arrow cells {_fmt(a)} and {_fmt(b)} are not adjacent")

    @property
    def start(self) -> Cell:
        return self.path[0]

    @property
    def tip(self) -> Cell:
        return self.path[-1]

    def __len__(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class Board:
    rows: int
    cols: int
    shaded: frozenset[Cell]
    predrawn: frozenset[Cell]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "shaded", _cells(self.shaded))
        object.__setattr__(self, "predrawn", _cells(self.predrawn))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.rows < 1 or self.cols < 1:
            raise BoardError(f"board size must be positive, got {self.rows}x{self.cols}")
        marked = self.shaded | self.predrawn
        if marked:
            rs, cs = list(map(itemgetter(0), marked)), list(map(itemgetter(1), marked))
            if min(rs) < 1 or max(rs) > self.rows or min(cs) < 1 or max(cs) > self.cols:
                bad = min(c for c in marked if not self.contains(c))
                raise BoardError(f"cell {_fmt(bad)} lies outside the {self.rows}x{self.cols} board")
        both = self.shaded & self.predrawn
        if both:
            raise BoardError(f"pre-drawn square on shaded cell {_fmt(min(both))}")
        seen: dict[Cell, int] = {}
        for k, arrow in enumerate(self.arrows):
            for c in arrow.path:
                if not self.contains(c):
                    raise BoardError(f"arrow {k + 1} leaves the board at {_fmt(c)}")
                if c in self.shaded:
                    raise BoardError(f"arrow {k + 1} passes through shaded cell {_fmt(c)}")
                if c in seen:
                    raise BoardError(
                        f"arrow cell conflict at {_fmt(c)} (arrows {seen[c] + 1} and {k + 1})"
                    )
                seen[c] = k
        object.__setattr__(self, "_arrow_of", seen)

    def contains(self, c: Cell) -> bool:
        return 1 <= c[0] <= self.rows and 1 <= c[1] <= self.cols

    def is_white(self, c: Cell) -> bool:
        return self.contains(c) and c not in self.shaded

    @property
    def white(self) -> frozenset[Cell]:
        w = self.__dict__.get("_white")
        if w is None:
            shaded = self.shaded
            w = frozenset(c for c in grid_cells(self.rows, self.cols) if c not in shaded)
            object.__setattr__(self, "_white", w)
        return w

    @property
    def free_cells(self) -> list[Cell]:
        """White cells without a pre-drawn square, in row-major order."""
        return sorted(self.white - self.predrawn)

    def arrow_of(self, c: Cell) -> int | None:
        """Index of the arrow passing through ``c``, or None."""
        return self._arrow_of.get(c)

    @property
    def arrow_cells(self) -> frozenset[Cell]:
        return frozenset(self._arrow_of)


@dataclass(frozen=True)
class Solution:
    squares: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "squares", frozenset(Cell(*c) for c in self.squares))


def check_solution(board: Board, solution: Solution) -> None:
    """Raise BoardError unless ``solution`` is structurally compatible with ``board``."""
    for c in sorted(solution.squares):
        if not board.contains(c):
            raise BoardError(f"square {_fmt(c)} lies outside the board")
        if c in board.shaded:
            raise BoardError(f"square on shaded cell {_fmt(c)}")
    missing = board.predrawn - solution.squares
    if missing:
        raise BoardError(f"pre-drawn square {_fmt(min(missing))} was erased")


# -- blocks and shapes --------------------------------------------------------


@dataclass(frozen=True)
class Block:
    cells: frozenset[Cell]

    @property
    def anchor(self) -> Cell:
        return min(self.cells)

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class Shape:
    """A polyomino up to translation; rotations and reflections stay distinct."""

    cells: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.cells)

    def __repr__(self) -> str:
        return f"Shape({sorted(self.cells)})"


def normalize(cells: Iterable[tuple[int, int]]) -> Shape:
    cells = list(cells)
    if not cells:
        return Shape(frozenset())
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    return Shape(frozenset((r - r0, c - c0) for r, c in cells))


def shape_of(block: Block | Iterable[tuple[int, int]]) -> Shape:
    cells = block.cells if isinstance(block, Block) else block
    return normalize(cells)


def extends_by_one(prev: Shape, nxt: Shape) -> bool:
    """True if ``nxt`` is ``prev`` plus one square, without rotating or flipping."""
    if len(nxt) != len(prev) + 1:
        return False
    for c in nxt.cells:
        if normalize(nxt.cells - {c}) == prev:
            return True
    return False


def components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """4-connected components of a cell set, ordered by their smallest cell."""
    todo = set(cells)
    out = []
    while todo:
        seed = min(todo)
        todo.discard(seed)
        comp = {seed}
        stack = [seed]
        while stack:
            for n in stack.pop().neighbours():
                if n in todo:
                    todo.discard(n)
                    comp.add(n)
                    stack.append(n)
        out.append(frozenset(comp))
    out.sort(key=min)
    return out


def blocks_of(board: Board, solution: Solution) -> list[Block]:
    """Maximal 4-connected groups of squares, sorted by their smallest cell."""
    return [Block(c) for c in components(solution.squares)]


# -- text formats -------------------------------------------------------------

_GLYPHS = {".": False, "#": True, "o": False}


def parse_board(text: str) -> Board:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    pos = 0

    def take(what: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise BoardError(f"line {pos + 1}: unexpected end of document, expected {what}")
        pos += 1
        return lines[pos - 1].rstrip("\r")

    if take("header") != "evolomino 1":
        raise BoardError("line 1: malformed header, expected 'evolomino 1'")
    parts = take("size line").split()
    if len(parts) != 3 or parts[0] != "size" or not all(p.isdigit() for p in parts[1:]):
        raise BoardError("line 2: malformed size line, expected 'size <rows> <cols>'")
    rows, cols = int(parts[1]), int(parts[2])
    if take("'grid'") != "grid":
        raise BoardError("line 3: expected 'grid'")
    shaded, predrawn = set(), set()
    for r in range(1, rows + 1):
        line = take(f"grid row {r}")
        if len(line) != cols:
            raise BoardError(f"line {pos}: grid row {r} has {len(line)} cells, expected {cols}")
        for c, ch in enumerate(line, 1):
            if ch not in _GLYPHS:
                raise BoardError(f"line {pos}: unknown glyph {ch!r} at {_fmt((r, c))}")
            if ch == "#":
                shaded.add(Cell(r, c))
            elif ch == "o":
                predrawn.add(Cell(r, c))
    parts = take("arrows line").split()
    if len(parts) != 2 or parts[0] != "arrows" or not parts[1].isdigit():
        raise BoardError(f"line {pos}: malformed arrows line, expected 'arrows <k>'")
    arrows = []
    for k in range(int(parts[1])):
        line = take(f"arrow {k + 1}")
        toks = line.split()
        if not toks or toks[0] != "arrow":
            raise BoardError(f"line {pos}: expected 'arrow <r>,<c> ...'")
        try:
            path = [Cell(*map(int, t.split(","))) for t in toks[1:]]
        except (TypeError, ValueError):
            raise BoardError(f"line {pos}: malformed arrow cell list") from None
        try:
            arrows.append(Arrow(tuple(path)))
        except BoardError as e:
            raise BoardError(f"line {pos}: {e}") from None
    if pos != len(lines):
        raise BoardError(f"line {pos + 1}: trailing content after arrows")
    return Board(rows, cols, frozenset(shaded), frozenset(predrawn), tuple(arrows))


def serialize_board(board: Board) -> str:
    out = ["evolomino 1", f"size {board.rows} {board.cols}", "grid"]
    for r in range(1, board.rows + 1):
        row = []
        for c in range(1, board.cols + 1):
            cell = Cell(r, c)
            row.append("#" if cell in board.shaded else "o" if cell in board.predrawn else ".")
        out.append("".join(row))
    out.append(f"arrows {len(board.arrows)}")
    for a in board.arrows:
        out.append("arrow " + " ".join(f"{r},{c}" for r, c in a.path))
    return "\n".join(out) + "\n"


def parse_solution(text: str, board: Board | None = None) -> Solution:
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise BoardError("line 1: empty solution document")
    parts = lines[0].split()
    if len(parts) != 3 or parts[0] != "solution" or not all(p.isdigit() for p in parts[1:]):
        raise BoardError("line 1: malformed header, expected 'solution <rows> <cols>'")
    rows, cols = int(parts[1]), int(parts[2])
    if board is not None and (rows, cols) != (board.rows, board.cols):
        raise BoardError(
            f"line 1: solution is {rows}x{cols} but board is {board.rows}x{board.cols}"
        )
    if len(lines) != rows + 1:
        raise BoardError(f"expected {rows} grid rows, found {len(lines) - 1}")
    squares = set()
    for r, line in enumerate(lines[1:], 1):
        if len(line) != cols:
            raise BoardError(f"line {r + 1}: grid row {r} has {len(line)} cells, expected {cols}")
        for c, ch in enumerate(line, 1):
            if ch not in ".#x":
                raise BoardError(f"line {r + 1}: unknown glyph {ch!r} at {_fmt((r, c))}")
            if board is not None and (ch == "#") != (Cell(r, c) in board.shaded):
                raise BoardError(f"line {r + 1}: shading at {_fmt((r, c))} does not match the board")
            if ch == "x":
                squares.add(Cell(r, c))
    sol = Solution(frozenset(squares))
    if board is not None:
        check_solution(board, sol)
    return sol


def serialize_solution(board: Board, solution: Solution) -> str:
    out = [f"solution {board.rows} {board.cols}"]
    for r in range(1, board.rows + 1):
        out.append(
            "".join(
                "#" if (r, c) in board.shaded else "x" if (r, c) in solution.squares else "."
                for c in range(1, board.cols + 1)
            )
        )
    return "\n".join(out) + "\n"


def _fmt(c) -> str:
    return f"{c[0]},{c[1]}"


def _fmt_path(path) -> str:
    return " ".join(_fmt(c) for c in path)
