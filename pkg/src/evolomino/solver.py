"""Exact backtracking search over square placements.

The search decides one free white cell at a time (empty first, then square)
in a fixed order and prunes partial assignments with three independent rules:

``blocks``    a block that is finished, or already touches two arrow cells,
              must hold exactly one arrow square; a block with no arrow
              square must still be able to reach one
``progress``  blocks along an arrow must be able to grow by one square each
              (full shape test once two neighbours are finished; before
              that, bounds from current sizes and the sizes a block can
              still reach)
``capacity``  an arrow must keep room for two blocks

Every leaf is checked with :func:`evolomino.verify.verify`, so pruning only
affects speed, never the result.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal

from .board import Board, Cell, Solution, extends_by_one, normalize
from .verify import verify

UNKNOWN, EMPTY, SQUARE = 0, 1, 2
PRUNING_RULES = ("blocks", "progress", "capacity")


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveConfig:
    count_limit: int | None = None
    node_budget: int | None = None
    cell_order: Literal["flood", "arrow", "rowmajor"] = "flood"
    pruning: frozenset[str] = frozenset(PRUNING_RULES)


@dataclass(frozen=True)
class SolveOutcome:
    status: Literal["sat", "unsat", "budget-exhausted"]
    witness: Solution | None = None
    count: int | None = None
    nodes: int = 0


def cell_order(board: Board, how: str = "flood") -> list[Cell]:
    """Deterministic branching order over the free white cells.

    ``flood``     breadth-first over the white cells, seeded from each arrow's
                  start in turn
    ``arrow``     arrow cells first, then their neighbours by distance
    ``rowmajor``  plain reading order
    """
    free = board.white - board.predrawn
    if how == "rowmajor":
        return sorted(free)
    white = board.white
    seen: set[Cell] = set()
    out: list[Cell] = []
    if how == "arrow":
        queue = deque()
        for a in board.arrows:
            for c in a.path:
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        _bfs(queue, seen, white, out)
    elif how == "flood":
        seeds = [a.start for a in board.arrows] + sorted(white)
        for s in seeds:
            if s not in seen:
                seen.add(s)
                _bfs(deque([s]), seen, white, out)
    else:
        raise ValueError(f"unknown cell order {how!r}")
    rest = sorted(white - seen)
    return [c for c in out + rest if c in free]


def _bfs(queue, seen, white, out):
    while queue:
        c = queue.popleft()
        out.append(c)
        for n in c.neighbours():
            if n in white and n not in seen:
                seen.add(n)
                queue.append(n)


class _Search:
    def __init__(self, board: Board, cfg: SolveConfig):
        self.board = board
        self.cfg = cfg
        cells = sorted(board.white)
        self.index = {c: i for i, c in enumerate(cells)}
        self.cells = cells
        self.nbrs = [
            tuple(self.index[n] for n in c.neighbours() if n in self.index) for c in cells
        ]
        self.state = [SQUARE if c in board.predrawn else UNKNOWN for c in cells]
        self.arrow_id = [-1] * len(cells)
        self.arrow_pos = [-1] * len(cells)
        self.paths = []
        for k, a in enumerate(board.arrows):
            p = [self.index[c] for c in a.path]
            self.paths.append(p)
            for i, v in enumerate(p):
                self.arrow_id[v] = k
                self.arrow_pos[v] = i
        self.order = [self.index[c] for c in cell_order(board, cfg.cell_order)]
        self.rule_blocks = "blocks" in cfg.pruning
        self.rule_progress = "progress" in cfg.pruning
        self.rule_capacity = "capacity" in cfg.pruning
        self.nodes = 0

    # -- components -----------------------------------------------------------

    def _comp(self, v: int, cache: dict):
        """(cells, arrow cells, complete) of the square component holding v."""
        hit = cache.get(v)
        if hit is not None:
            return hit
        state, nbrs, arrow_id = self.state, self.nbrs, self.arrow_id
        comp = [v]
        seen = {v}
        on_arrow = []
        complete = True
        i = 0
        while i < len(comp):
            u = comp[i]
            i += 1
            if arrow_id[u] >= 0:
                on_arrow.append(u)
            for w in nbrs[u]:
                s = state[w]
                if s == SQUARE:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                elif s == UNKNOWN:
                    complete = False
        info = (comp, on_arrow, complete)
        for u in comp:
            cache[u] = info
        return info

    def _can_reach_arrow(self, comp) -> bool:
        state, nbrs, arrow_id = self.state, self.nbrs, self.arrow_id
        seen = set(comp)
        queue = deque(comp)
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w in seen or state[w] == EMPTY:
                    continue
                if arrow_id[w] >= 0:
                    return True
                seen.add(w)
                queue.append(w)
        return False

    def _block_ok(self, info) -> bool:
        comp, on_arrow, complete = info
        if len(on_arrow) >= 2:
            return False
        if not on_arrow:
            return not complete and self._can_reach_arrow(comp)
        return True

    # -- arrows ---------------------------------------------------------------

    def _neighbour_square(self, path, i, step):
        """Nearest square along ``path`` from position i (exclusive), skipping
        empty cells; None if an undecided cell or the path end comes first."""
        state = self.state
        j = i + step
        while 0 <= j < len(path):
            s = state[path[j]]
            if s == SQUARE:
                return path[j]
            if s == UNKNOWN:
                return None
            j += step
        return None

    def _pair_ok(self, u, w, cache) -> bool:
        """u precedes w along an arrow with only empty cells between."""
        pu = self._comp(u, cache)
        pw = self._comp(w, cache)
        if pu is pw:
            return False
        cu, _, done_u = pu
        cw, _, done_w = pw
        if done_u and done_w:
            return extends_by_one(
                normalize(self.cells[x] for x in cu), normalize(self.cells[x] for x in cw)
            )
        if done_u:
            return len(cw) <= len(cu) + 1
        if done_w:
            return len(cu) <= len(cw) - 1
        return True

    def _arrow_around(self, v, cache) -> bool:
        """Progress checks for the arrow square v against its path neighbours."""
        path = self.paths[self.arrow_id[v]]
        i = self.arrow_pos[v]
        prev = self._neighbour_square(path, i, -1)
        if prev is not None and not self._pair_ok(prev, v, cache):
            return False
        nxt = self._neighbour_square(path, i, 1)
        if nxt is not None and not self._pair_ok(v, nxt, cache):
            return False
        return True

    def _max_size(self, info) -> int:
        """Largest size the block can still reach without absorbing a second
        arrow cell or crossing an empty cell."""
        comp, on_arrow, _ = info
        state, nbrs, arrow_id = self.state, self.nbrs, self.arrow_id
        seen = set(comp)
        queue = deque(comp)
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w in seen or state[w] == EMPTY or arrow_id[w] >= 0:
                    continue
                seen.add(w)
                queue.append(w)
        return len(seen)

    def _sizes_ok(self, k: int, cache: dict) -> bool:
        """Block sizes strictly increase by one per block along arrow k; check
        every pair of known squares against their current and reachable sizes."""
        state = self.state
        prev = None  # (current size, max size, open path cells since)
        gap = 0
        for u in self.paths[k]:
            s = state[u]
            if s == EMPTY:
                continue
            if s == UNKNOWN:
                gap += 1
                continue
            info = self._comp(u, cache)
            if len(info[1]) != 1:
                return True  # the blocks rule owns this case
            cur = len(info[0])
            hi = cur if info[2] else self._max_size(info)
            if prev is not None:
                pcur, phi = prev
                if hi < pcur + 1 or cur > phi + 1 + gap:
                    return False
            prev = (cur, hi)
            gap = 0
        return True

    # -- consistency of the latest decision -----------------------------------

    def consistent(self, v: int) -> bool:
        cache: dict = {}
        state = self.state
        if state[v] == SQUARE:
            infos = [self._comp(v, cache)]
        else:
            infos = []
            for w in self.nbrs[v]:
                if state[w] == SQUARE and w not in cache:
                    infos.append(self._comp(w, cache))
        for info in infos:
            if self.rule_blocks and not self._block_ok(info):
                return False
            if self.rule_progress and len(info[1]) == 1:
                if not self._arrow_around(info[1][0], cache):
                    return False
                if not self._sizes_ok(self.arrow_id[info[1][0]], cache):
                    return False
        k = self.arrow_id[v]
        if k >= 0:
            path = self.paths[k]
            if self.rule_progress and state[v] == EMPTY:
                i = self.arrow_pos[v]
                a = self._neighbour_square(path, i, -1)
                b = self._neighbour_square(path, i, 1)
                if a is not None and b is not None and not self._pair_ok(a, b, cache):
                    return False
                if not self._sizes_ok(k, cache):
                    return False
            if self.rule_capacity:
                open_slots = sum(state[u] != EMPTY for u in path)
                if open_slots < 2:
                    return False
        return True

    def _solution(self) -> Solution:
        return Solution(frozenset(self.cells[v] for v in range(len(self.cells)) if self.state[v] == SQUARE))

    def run(self, base: int = 0, frontier: int | None = None) -> Iterator:
        """Yield every valid solution in search order.

        Positions below ``base`` are taken as already decided.  With
        ``frontier`` set, the search stops there and yields the decisions
        made so far instead of solutions.
        """
        order, state = self.order, self.state
        budget = self.cfg.node_budget
        n = len(order) if frontier is None else min(frontier, len(order))
        tried = [0] * (n + 1)
        pos = base
        while pos >= base:
            if pos == n:
                if frontier is not None:
                    yield tuple(state[v] for v in order[:n])
                else:
                    sol = self._solution()
                    if verify(self.board, sol).valid:
                        yield sol
                if pos == base:
                    return
                pos -= 1
                continue
            v = order[pos]
            t = tried[pos]
            if t == 2:
                state[v] = UNKNOWN
                tried[pos] = 0
                pos -= 1
                continue
            tried[pos] = t + 1
            if budget is not None and self.nodes >= budget:
                raise BudgetExhausted(self.nodes)
            self.nodes += 1
            state[v] = EMPTY if t == 0 else SQUARE
            if self.consistent(v):
                pos += 1


def _search(board: Board, cfg: SolveConfig, stop_after: int | None) -> SolveOutcome:
    s = _Search(board, cfg)
    found: list[Solution] = []
    try:
        for sol in s.run():
            found.append(sol)
            if stop_after is not None and len(found) >= stop_after:
                break
    except BudgetExhausted:
        return SolveOutcome("budget-exhausted", found[0] if found else None, None, s.nodes)
    status = "sat" if found else "unsat"
    return SolveOutcome(status, found[0] if found else None, len(found), s.nodes)


def solve(board: Board, cfg: SolveConfig = SolveConfig()) -> SolveOutcome:
    """Find the first solution in search order."""
    out = _search(board, cfg, 1)
    return SolveOutcome(out.status, out.witness, None, out.nodes)


def count_solutions(board: Board, cfg: SolveConfig = SolveConfig()) -> SolveOutcome:
    """Count all solutions (up to ``cfg.count_limit``); witness is the first found."""
    return _search(board, cfg, cfg.count_limit)


def iter_solutions(board: Board, cfg: SolveConfig = SolveConfig()) -> Iterator[Solution]:
    yield from _Search(board, cfg).run()


# -- parallel mode --------------------------------------------------------------
#
# The root of the search tree is cut at a fixed depth; every consistent prefix
# becomes one job.  Prefixes come out in search order, so concatenating the
# per-job results in that order reproduces the sequential run exactly.  The
# node budget applies to each job on its own.


def _job(board: Board, cfg: SolveConfig, prefix: tuple, stop_after: int | None):
    s = _Search(board, cfg)
    for v, st in zip(s.order, prefix):
        s.state[v] = st
    found = []
    try:
        for sol in s.run(base=len(prefix)):
            found.append(sol)
            if stop_after is not None and len(found) >= stop_after:
                break
    except BudgetExhausted:
        return found, s.nodes, False
    return found, s.nodes, True


def parallel_count(board: Board, cfg: SolveConfig = SolveConfig(), jobs: int = 2,
                   stop_after: int | None = None) -> SolveOutcome:
    """Same result as :func:`count_solutions`, spread over ``jobs`` processes."""
    from concurrent.futures import ProcessPoolExecutor

    stop_after = stop_after if stop_after is not None else cfg.count_limit
    depth = 0
    width = len(_Search(board, cfg).order)
    prefixes: list[tuple] = [()]
    nodes = 0
    while len(prefixes) < 4 * jobs and depth < width:
        depth = min(depth + 2, width)
        root = _Search(board, cfg)
        try:
            prefixes = list(root.run(frontier=depth))
        except BudgetExhausted:
            return SolveOutcome("budget-exhausted", None, None, root.nodes)
        nodes = root.nodes
        if not prefixes:
            break
    found: list[Solution] = []
    complete = True
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_job, board, cfg, p, stop_after) for p in prefixes]
        for fut in futures:
            sols, k, ok = fut.result()
            nodes += k
            complete &= ok
            found.extend(sols)
    if stop_after is not None:
        found = found[:stop_after]
    witness = found[0] if found else None
    if not complete:
        return SolveOutcome("budget-exhausted", witness, None, nodes)
    return SolveOutcome("sat" if found else "unsat", witness, len(found), nodes)


# The brute-force oracle lives in its own module; re-exported here.
from .oracle import OracleTooLarge, oracle_count  # noqa: E402
