"""Stack gadget tiles into a board and wire them together.

The board is built from *stages*, bottom to top.  A stage is a left-to-right
row of units; each unit is a gadget template (or a plain wire segment that
lets a signal pass the stage) and names the signal lanes it consumes and
produces.  Between two stages sits a *jog band* that moves every lane from
its exit column below to its entry column above without changing the
left-to-right order of lanes, so bands never cross; every crossing is done
inside a crossover tile.

Band routing: a lane that moves right climbs to a horizontal track, runs
right and climbs on.  Among right-moving lanes whose spans overlap, the
rightmost gets the lowest track so that no horizontal run cuts another lane's
climb.  Left-moving lanes mirror this and can share track rows with
right-moving ones, since the two groups never overlap horizontally.  Tracks are two rows apart and the band keeps a
buffer row at each end, so every corridor is fenced by shaded cells.

Everything not explicitly carved is shaded.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..board import Arrow, Board, BoardError, Cell, grid_cells
from .tiles import GadgetTemplate, template

GAP = 1  # shaded columns between neighbouring units of a stage


@dataclass(frozen=True)
class Unit:
    kind: str
    ident: str
    lanes_in: tuple[str, ...] = ()
    lanes_out: tuple[str, ...] = ()
    pad: int = 0  # extra columns before the unit; negative values overlap fences
    at: int | None = None  # absolute left column, overrides pad

    @property
    def tile(self) -> GadgetTemplate:
        return template(self.kind)


@dataclass(frozen=True)
class Placement:
    kind: str
    ident: str
    top_left: Cell
    rows: int
    cols: int


@dataclass
class Composition:
    board: Board
    placements: list[Placement]
    # arrow index -> units and corridors the wire runs through, bottom to top
    wire_of_arrow: dict[int, tuple[str, ...]]
    owner: dict[Cell, str]

    def to_global(self, ident: str, cell: Cell) -> Cell:
        """Map a template cell of unit ``ident`` onto the board."""
        p = next(p for p in self.placements if p.ident == ident)
        return Cell(p.top_left.row + cell.row - 1, p.top_left.col + cell.col - 1)


def _band_paths(xs: list[int], ys: list[int]):
    """Track assignment for one band; returns (height, lane -> track).

    A lane's horizontal run only has to clear the lanes whose spans come
    within one column of it; those on its far side get lower tracks.
    """
    track: dict[int, int] = {}
    right = sorted((i for i in range(len(xs)) if ys[i] > xs[i]), key=lambda i: -xs[i])
    for i in right:
        below = [track[j] for j in track if ys[j] > xs[j] and xs[j] <= ys[i] + 1]
        track[i] = 1 + max(below, default=-1)
    left = sorted((i for i in range(len(xs)) if ys[i] < xs[i]), key=lambda i: xs[i])
    for i in left:
        below = [track[j] for j in track if ys[j] < xs[j] and xs[j] >= ys[i] - 1]
        track[i] = 1 + max(below, default=-1)
    tracks = 1 + max(track.values(), default=-1)
    height = 2 * tracks + 1 if tracks else 0
    return height, track


def compose(stages: list[list[Unit]]) -> Composition:
    """Assemble stages (listed bottom to top) into one board."""
    # -- columns --------------------------------------------------------------
    unit_x: dict[str, int] = {}
    widths = []
    for stage in stages:
        x = 1
        for u in stage:
            if u.at is not None:
                if u.at < x - GAP:
                    raise BoardError(f"unit {u.ident} overlaps its left neighbour")
                x = u.at
            else:
                x += u.pad
            if x < 1:
                raise BoardError(f"unit {u.ident} would start left of the board")
            unit_x[u.ident] = x
            x += u.tile.cols + GAP
        widths.append(x - 1 - GAP)
    cols = max(widths)

    def in_cols(stage):
        out = []
        for u in stage:
            for p, lane in zip(u.tile.ins, u.lanes_in):
                out.append((lane, unit_x[u.ident] + p.col - 1))
        return out

    def out_cols(stage):
        out = []
        for u in stage:
            if u.kind == "wire-segment":
                p = u.tile.ins[0]
                out.append((u.lanes_out[0], unit_x[u.ident] + p.col - 1))
                continue
            for p, lane in zip(u.tile.outs, u.lanes_out):
                out.append((lane, unit_x[u.ident] + p.path[-1].col - 1))
        return out

    # -- band shapes ------------------------------------------------------------
    bands = []
    for lower, upper in zip(stages, stages[1:]):
        below = out_cols(lower)
        above = in_cols(upper)
        if [l for l, _ in below] != [l for l, _ in above]:
            raise BoardError(
                f"lane order changes between stages: {[l for l, _ in below]} vs {[l for l, _ in above]}"
            )
        xs = [x for _, x in below]
        ys = [x for _, x in above]
        height, track = _band_paths(xs, ys)
        bands.append((below, above, height, track))

    # -- rows (y counts upward from 1 at the bottom) ------------------------------
    stage_y = []
    stage_h = []
    y = 1
    for k, stage in enumerate(stages):
        h = max(u.tile.rows for u in stage)
        stage_y.append(y)
        stage_h.append(h)
        y += h
        if k < len(bands):
            y += bands[k][2]
    rows = y - 1

    mk = tuple.__new__

    def cell(y: int, x: int) -> Cell:
        return mk(Cell, (rows + 1 - y, x))

    white: set[Cell] = set()
    predrawn: set[Cell] = set()
    owner: dict[Cell, str] = {}
    placements: list[Placement] = []

    open_wire: dict[str, list[Cell]] = {}
    wire_tag: dict[str, list[str]] = {}
    arrows: list[Arrow] = []
    arrow_tags: dict[int, tuple[str, ...]] = {}
    internal: list[Arrow] = []

    def carve(c: Cell, who: str):
        if c in white and owner.get(c) != who:
            raise BoardError(f"cell {c.row},{c.col} claimed by {owner[c]} and {who}")
        white.add(c)
        owner[c] = who

    def close(lane: str, tail: list[Cell], who: str):
        path = open_wire.pop(lane) + tail
        tags = wire_tag.pop(lane) + [who]
        arrow_tags[len(arrows)] = tuple(tags)
        arrows.append(Arrow(tuple(path)))

    for k, stage in enumerate(stages):
        y_bot = stage_y[k]
        h = stage_h[k]
        # band below this stage: extend every open wire up to the entry row
        if k > 0:
            below, above, bh, track = bands[k - 1]
            yb = y_bot - bh
            for i, ((lane, x0), (_, x1)) in enumerate(zip(below, above)):
                who = f"wire:{lane}"
                cells = []
                if x0 == x1:
                    cells = [cell(yy, x0) for yy in range(yb, y_bot)]
                else:
                    ty = yb + 1 + 2 * track[i]
                    cells += [cell(yy, x0) for yy in range(yb, ty)]
                    step = 1 if x1 > x0 else -1
                    cells += [cell(ty, xx) for xx in range(x0, x1, step)]
                    cells += [cell(yy, x1) for yy in range(ty, y_bot)]
                for c in cells:
                    carve(c, who)
                open_wire[lane] += cells
                wire_tag[lane].append(who)
        for u in stage:
            t = u.tile
            x0 = unit_x[u.ident]
            ty0 = y_bot + h - t.rows  # template sits at the top of the stage
            top_left = cell(ty0 + t.rows - 1, x0)
            placements.append(Placement(u.kind, u.ident, top_left, t.rows, t.cols))

            def g(c: Cell) -> Cell:
                return cell(ty0 + t.rows - c.row, x0 + c.col - 1)

            for lc in t.white:
                carve(g(lc), u.ident)
            predrawn.update(g(c) for c in t.predrawn)
            for a in t.arrows:
                internal.append(Arrow(tuple(g(c) for c in a.path)))
            for p, lane in zip(t.ins, u.lanes_in):
                ext = [cell(yy, x0 + p.col - 1) for yy in range(y_bot, ty0)]
                for c in ext:
                    carve(c, f"wire:{lane}")
                tail = ext + [g(c) for c in p.path]
                if u.kind == "wire-segment":
                    open_wire[lane] += tail
                    wire_tag[lane].append(u.ident)
                else:
                    close(lane, tail, u.ident)
            if u.kind != "wire-segment":
                for p, lane in zip(t.outs, u.lanes_out):
                    if lane in open_wire:
                        raise BoardError(f"lane {lane} produced twice")
                    open_wire[lane] = [g(c) for c in p.path]
                    wire_tag[lane] = [u.ident]
    if open_wire:
        raise BoardError(f"lanes left open at the top: {sorted(open_wire)}")

    shaded = frozenset(grid_cells(rows, cols)).difference(white)
    board = Board(rows, cols, shaded, frozenset(predrawn),
                  tuple(internal) + tuple(arrows))
    shift = len(internal)
    return Composition(
        board,
        placements,
        {i + shift: tags for i, tags in arrow_tags.items()},
        owner,
    )
