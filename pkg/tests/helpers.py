"""Shared test utilities: data access and random small boards."""

from __future__ import annotations

import itertools
import random

from evolomino.board import Arrow, Board, Cell, Solution, parse_board, parse_solution
from evolomino.reducer.tiles import read_data
from evolomino.verify import verify


def board(name: str) -> Board:
    return parse_board(read_data(name))


def solution(name: str, b: Board | None = None) -> Solution:
    return parse_solution(read_data(name), b)


def random_board(rng: random.Random, max_free: int = 18) -> Board:
    """Small board with random shading, arrows and pre-drawn squares.

    Arrows are random self-avoiding walks; the free white cells are capped at
    ``max_free`` by shading extra cells that no arrow uses.
    """
    rows, cols = rng.randint(1, 6), rng.randint(1, 6)
    cells = [Cell(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)]
    shaded = {c for c in cells if rng.random() < rng.choice((0.0, 0.15, 0.3))}
    white = [c for c in cells if c not in shaded]
    used: set[Cell] = set()
    arrows = []
    for _ in range(rng.randint(0, 3)):
        free = [c for c in white if c not in used]
        if not free:
            break
        path = [rng.choice(free)]
        for _ in range(rng.randint(1, 6)):
            nxt = [n for n in path[-1].neighbours()
                   if n in white and n not in used and n not in path]
            if not nxt:
                break
            path.append(rng.choice(nxt))
        if len(path) >= 2:
            arrows.append(Arrow(tuple(path)))
            used.update(path)
    predrawn = {c for c in white if rng.random() < 0.08}
    free = [c for c in white if c not in predrawn]
    rng.shuffle(free)
    for c in free:
        if len([x for x in white if x not in shaded and x not in predrawn]) <= max_free:
            break
        if c not in used:
            shaded.add(c)
    b = Board(rows, cols, frozenset(shaded), frozenset(predrawn), tuple(arrows))
    return b if len(b.free_cells) <= max_free else random_board(rng, max_free)


def brute_force_solutions(b: Board) -> set[frozenset[Cell]]:
    """Every placement judged by ``verify`` alone, no prefilter."""
    free = b.free_cells
    out = set()
    for bits in itertools.product((0, 1), repeat=len(free)):
        sq = frozenset(b.predrawn | {c for c, x in zip(free, bits) if x})
        if verify(b, Solution(sq)).valid:
            out.add(sq)
    return out


# acceptance verdicts, printed by the terminal-summary hook in conftest.py
ACCEPTANCE: dict[int, str] = {}
