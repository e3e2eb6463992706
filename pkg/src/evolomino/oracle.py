"""Brute-force solution counting, used as ground truth for the search.

Every one of the 2^k square placements over the free white cells is
enumerated.  A compiled pass discards placements that break a necessary
condition of the rules (a block without exactly one arrow square, an arrow
meeting fewer than two blocks, or a consecutive pair of blocks whose sizes do
not step by one); every placement that survives is judged by
:func:`evolomino.verify.verify`.  The accepted set is therefore exactly
``{s : verify(board, s).valid}``, the prefilter only saves interpreter time.

Placements factor over 4-connected white regions, since a block and an
arrow each lie inside one region.  Each region is enumerated on its own and
the per-region counts multiply; the ``max_white`` threshold applies per
region.
"""

from __future__ import annotations

import numba
import numpy as np

from .board import Board, Cell, Solution, components
from .verify import verify

CHUNK = 1 << 20


class OracleTooLarge(ValueError):
    pass


@numba.njit(cache=True, nogil=True)
def _prefilter(lo, hi, free, fixed, nbr, on_arrow, path_cells, path_start, out):
    n = nbr.shape[0]
    k = free.shape[0]
    sq = np.zeros(n, np.uint8)
    label = np.empty(n, np.int32)
    size = np.empty(n, np.int32)
    stack = np.empty(n, np.int32)
    found = 0
    for m in range(lo, hi):
        for i in range(n):
            sq[i] = fixed[i]
            label[i] = -1
        for j in range(k):
            if (m >> j) & 1:
                sq[free[j]] = 1
        ok = True
        nb = 0
        for i in range(n):
            if sq[i] == 0 or label[i] >= 0:
                continue
            label[i] = nb
            top = 1
            stack[0] = i
            cnt = 0
            arrows = 0
            while top > 0:
                top -= 1
                u = stack[top]
                cnt += 1
                arrows += on_arrow[u]
                for d in range(4):
                    w = nbr[u, d]
                    if w >= 0 and sq[w] == 1 and label[w] < 0:
                        label[w] = nb
                        stack[top] = w
                        top += 1
            if arrows != 1:
                ok = False
                break
            size[nb] = cnt
            nb += 1
        if not ok:
            continue
        for a in range(path_start.shape[0] - 1):
            blocks = 0
            last = -1
            for p in range(path_start[a], path_start[a + 1]):
                u = path_cells[p]
                if sq[u] == 1:
                    s = size[label[u]]
                    if blocks > 0 and s != last + 1:
                        ok = False
                        break
                    blocks += 1
                    last = s
            if not ok or blocks < 2:
                ok = False
                break
        if ok:
            out[found] = m
            found += 1
    return found


def oracle_count(board: Board, max_white: int = 24) -> int:
    """Count solutions of ``board`` by exhaustive enumeration."""
    regions = components(board.white)
    for region in regions:
        k = len(region - board.predrawn)
        if k > max_white:
            a = min(region)
            raise OracleTooLarge(
                f"white region at {a.row},{a.col} has {k} free cells (limit {max_white})"
            )
    total = 1
    for region in regions:
        total *= _region_count(board, region)
        if total == 0:
            break
    return total


def oracle_solutions(board: Board, max_white: int = 24) -> list[Solution]:
    """Every valid solution, for boards with a single white region (or tests)."""
    regions = components(board.white)
    per_region = []
    for region in regions:
        if len(region - board.predrawn) > max_white:
            raise OracleTooLarge(f"white region at {min(region)} is too large")
        per_region.append(_region_solutions(board, region))
    out = [frozenset()]
    for sols in per_region:
        out = [a | b for a in out for b in sols]
    return sorted((Solution(s) for s in out), key=lambda s: sorted(s.squares))


def _region_count(board: Board, region: frozenset[Cell]) -> int:
    return len(_region_solutions(board, region))


def _region_solutions(board: Board, region: frozenset[Cell]) -> list[frozenset[Cell]]:
    cells = sorted(region)
    index = {c: i for i, c in enumerate(cells)}
    arrows = [a for a in board.arrows if a.start in region]
    nbr = np.full((len(cells), 4), -1, np.int32)
    for i, c in enumerate(cells):
        for d, n in enumerate(c.neighbours()):
            nbr[i, d] = index.get(n, -1)
    on_arrow = np.array([board.arrow_of(c) is not None for c in cells], np.int32)
    fixed = np.array([c in board.predrawn for c in cells], np.uint8)
    free_cells = [c for c in cells if c not in board.predrawn]
    free = np.array([index[c] for c in free_cells], np.int32)
    path_cells = np.array([index[c] for a in arrows for c in a.path], np.int32)
    path_start = np.cumsum([0] + [len(a) for a in arrows]).astype(np.int32)

    # The region on its own: everything else shaded, only its arrows kept.
    everything = {Cell(r, c) for r in range(1, board.rows + 1) for c in range(1, board.cols + 1)}
    sub = Board(board.rows, board.cols, frozenset(everything - region),
                board.predrawn & region, tuple(arrows))
    fixed_set = board.predrawn & region

    accepted = []
    total = 1 << len(free_cells)
    buf = np.empty(min(CHUNK, total), np.int64)
    for lo in range(0, total, CHUNK):
        hi = min(lo + CHUNK, total)
        found = _prefilter(lo, hi, free, fixed, nbr, on_arrow, path_cells, path_start, buf)
        for m in buf[:found].tolist():
            squares = fixed_set | {c for j, c in enumerate(free_cells) if (m >> j) & 1}
            if verify(sub, Solution(squares)).valid:
                accepted.append(frozenset(squares))
    return accepted


# -- block join -----------------------------------------------------------------
#
# Exhaustive enumeration is hopeless once a board has more than about thirty
# free cells.  The join below reaches the same count from the other side: by
# R1 every block is a connected set of white cells holding exactly one arrow
# cell, so each arrow's blocks can be listed from its own candidate polyominoes
# (sizes stepping by one, shapes growing by one square) and the arrows joined
# under the condition that distinct blocks neither overlap nor touch.  Every
# valid solution arises from exactly one such join, and every joined placement
# is still judged by ``verify``.


def candidate_blocks(board: Board, root: Cell, limit: int = 200_000) -> list[frozenset[Cell]]:
    """All 4-connected sets of white cells containing ``root`` and no other
    arrow cell (Redelmeier's enumeration, each set exactly once)."""
    allowed = board.white - board.arrow_cells
    out: list[frozenset[Cell]] = []

    def nb(c):
        return [n for n in c.neighbours() if n in allowed]

    def rec(poly, untried, seen):
        out.append(poly)
        if len(out) > limit:
            raise OracleTooLarge(f"more than {limit} candidate blocks at {root.row},{root.col}")
        untried = list(untried)
        while untried:
            v = untried.pop()
            fresh = [w for w in nb(v) if w not in seen]
            rec(poly | {v}, untried + fresh, seen | set(fresh))

    first = nb(root)
    rec(frozenset({root}), first, {root, *first})
    return out


def _halo(cells) -> set[Cell]:
    h = set(cells)
    for c in cells:
        h.update(c.neighbours())
    return h


def _arrow_sequences(board: Board, arrow, cands) -> list[tuple[frozenset[Cell], ...]]:
    from .board import extends_by_one, normalize

    path = arrow.path
    shape = {}
    found = []

    def shp(b):
        s = shape.get(b)
        if s is None:
            s = shape[b] = normalize(b)
        return s

    def rec(i, chosen, halo):
        if i == len(path):
            if len(chosen) >= 2:
                found.append(tuple(chosen))
            return
        c = path[i]
        if c not in board.predrawn:
            rec(i + 1, chosen, halo)
        prev = chosen[-1] if chosen else None
        for b in cands[c]:
            if prev is not None and (len(b) != len(prev) + 1 or not extends_by_one(shp(prev), shp(b))):
                continue
            if b & halo:
                continue
            rec(i + 1, chosen + [b], halo | _halo(b))

    rec(0, [], set())
    return found


def join_count(board: Board) -> int:
    """Exact solution count via the block join; independent of the search."""
    return len(join_solutions(board))


def join_solutions(board: Board) -> list[Solution]:
    cands = {c: candidate_blocks(board, c) for c in sorted(board.arrow_cells)}
    seqs = [_arrow_sequences(board, a, cands) for a in board.arrows]
    order = sorted(range(len(seqs)), key=lambda k: len(seqs[k]))
    if any(not seqs[k] for k in order):
        return []
    accepted: list[Solution] = []

    def rec(j, occupied: frozenset[Cell], halo: set[Cell]):
        if j == len(order):
            if board.predrawn <= occupied:
                sol = Solution(occupied)
                if verify(board, sol).valid:
                    accepted.append(sol)
            return
        for seq in seqs[order[j]]:
            cells = frozenset().union(*seq)
            if cells & halo:
                continue
            rec(j + 1, occupied | cells, halo | _halo(cells))

    rec(0, frozenset(), set())
    # A square set determines its blocks, so distinct joins give distinct
    # placements; sorting keeps the output deterministic.
    return sorted(accepted, key=lambda s: sorted(s.squares))
