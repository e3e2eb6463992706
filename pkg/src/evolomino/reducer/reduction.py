"""Compile a 3-CNF formula into an Evolomino board and decode solutions back.

Layout, bottom to top:

1. one variable gadget per variable;
2. split stages: a variable with k occurrences gets a left-leaning chain of
   k - 1 split gadgets, one chain level per stage;
3. a negation stage: one negation gadget on every negative occurrence, and a
   terminator on every variable that occurs nowhere;
4. crossover stages: the occurrence lanes are put into clause-port order by
   odd-even transposition, one crossover gadget per swapped neighbour pair;
5. one clause gadget per clause.

Within a variable the occurrence lanes are already ordered by their clause
port, so the crossovers are exactly the inversions between lanes of different
variables and two routes cross at most once.

Every lane sits on a fixed column slot, ``PITCH`` columns apart, and each unit
is placed so that its ports line up with the slots of its lanes; only the
lanes a gadget touches jog in the band above it.  The board is therefore at
most ``PITCH * (3m + n) + 4`` columns wide, and its height is the sum of at
most ``6m + 2`` stage heights (16 rows at most) plus short jog bands.  Both
are well inside the O(m^2 + n) bound; :data:`SIZE_K` is the committed
constant for ``max(rows, cols) <= SIZE_K * (m^2 + n)``, largest for one clause
over one variable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from ..board import Board, Cell, Solution, parse_board, serialize_board
from ..solver import SolveConfig, count_solutions
from .cnf import CNF, truth_table_count
from .compose import Composition, Placement, Unit, compose

SIZE_K = 40
PITCH = 6  # columns between neighbouring lane slots
PROBES = (Cell(3, 2), Cell(4, 2))  # driver cells below the start square


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class Route:
    """Path of one literal occurrence from its variable to its clause port."""

    occurrence: int  # clause-port index: 3 * clause + position
    variable: int
    positive: bool
    units: tuple[str, ...]
    lane_positions: tuple[int, ...]  # lane index per crossover-section stage


@dataclass(frozen=True)
class Crossing:
    routes: tuple[int, int]
    unit: str
    at: Cell


@dataclass
class LayoutPlan:
    stages: list[list[Unit]]
    placements: list[Placement]
    routes: list[Route]
    crossings: list[Crossing]
    composition: Composition = field(repr=False)


@dataclass(frozen=True)
class VariableProbe:
    var: int
    cells: tuple[Cell, ...]
    true_pattern: tuple[int, ...]
    false_pattern: tuple[int, ...]


@dataclass
class ReductionArtifact:
    board: Board
    decode_map: tuple[VariableProbe, ...]
    inventory: dict[str, int]
    formula: CNF
    plan: LayoutPlan = field(repr=False)


# -- planning -------------------------------------------------------------------


def _slot(p: int) -> int:
    return 4 + PITCH * p


def _at(port_col: int, slot: int) -> int:
    """Left column that puts template column ``port_col`` on lane slot ``slot``."""
    return _slot(slot) - port_col + 1


def plan_layout(f: CNF) -> LayoutPlan:
    n, m = f.num_vars, f.num_clauses
    occ_of_var: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    polarity: dict[int, bool] = {}
    var_of: dict[int, int] = {}
    for j, cl in enumerate(f.clauses):
        for p, (v, pol) in enumerate(cl):
            t = 3 * j + p
            occ_of_var[v].append(t)
            polarity[t] = pol
            var_of[t] = v
    units_on: dict[int, list[str]] = {t: [] for t in range(3 * m)}

    # Unused variables go to the right so that the occurrence lanes end up on
    # the consecutive slots 0 .. 3m-1.
    used = [v for v in range(1, n + 1) if occ_of_var[v]]
    var_order = used + [v for v in range(1, n + 1) if not occ_of_var[v]]
    base: dict[int, int] = {}
    s = 0
    for v in var_order:
        base[v] = s
        s += max(1, len(occ_of_var[v]))
    k_of = {v: len(occ_of_var[v]) for v in var_order}

    slot: dict[str, int] = {}
    stages: list[list[Unit]] = []
    stage = []
    for v in var_order:
        lane = f"x{v}"
        slot[lane] = base[v] + max(k_of[v] - 1, 0)
        stage.append(Unit("variable", f"var:{v}", (), (lane,), at=_at(2, slot[lane])))
    stages.append(stage)

    def passing(lane: str, tag: str) -> Unit:
        return Unit("wire-segment", f"pass:{lane}@{tag}", (lane,), (lane,), at=_at(2, slot[lane]))

    # Split chains.  lanes[v] lists the current lanes of v, left to right; the
    # chain always splits the leftmost one, whose right half keeps the slot.
    lanes: dict[int, list[str]] = {v: [f"x{v}"] for v in var_order}
    depth = max((k - 1 for k in k_of.values()), default=0)
    split_path: dict[str, list[str]] = {f"x{v}": [] for v in var_order}
    for d in range(1, depth + 1):
        stage = []
        for v in var_order:
            need = k_of[v] - 1 >= d
            for i, lane in enumerate(lanes[v]):
                if need and i == 0:
                    ident = f"split:{v}.{d}"
                    left, right = f"x{v}.{d}L", f"x{v}.{d}R"
                    here = slot[lane]
                    stage.append(Unit("split", ident, (lane,), (left, right), at=_at(4, here)))
                    slot[right], slot[left] = here, here - 1
                    split_path[left] = split_path[lane] + [ident]
                    split_path[right] = split_path[lane] + [ident]
                else:
                    stage.append(passing(lane, f"s{d}"))
            if need:
                lanes[v] = [f"x{v}.{d}L", f"x{v}.{d}R"] + lanes[v][1:]
        stages.append(stage)

    # Occurrence lanes, ordered by clause port inside each variable.
    lane_of: dict[int, str] = {}
    for v in used:
        for t, lane in zip(sorted(occ_of_var[v]), lanes[v]):
            lane_of[t] = lane
            units_on[t] += [f"var:{v}"] + split_path[lane]

    if len(used) < n or any(not pol for pol in polarity.values()):
        stage = []
        for v in var_order:
            if not occ_of_var[v]:
                stage.append(Unit("terminator", f"term:{v}", (f"x{v}",), (),
                                  at=_at(2, slot[f"x{v}"])))
                continue
            for t in sorted(occ_of_var[v]):
                lane = lane_of[t]
                if polarity[t]:
                    stage.append(passing(lane, "neg"))
                else:
                    ident = f"neg:{t}"
                    out = f"o{t}"
                    stage.append(Unit("negation", ident, (lane,), (out,), at=_at(2, slot[lane])))
                    slot[out] = slot[lane]
                    lane_of[t] = out
                    units_on[t].append(ident)
        stages.append(stage)

    # Odd-even transposition into clause-port order; position p is slot p.
    order = [t for v in used for t in sorted(occ_of_var[v])]
    positions = {t: [i] for i, t in enumerate(order)}
    swaps: list[tuple[int, int, str]] = []
    rnd = 0
    while order != sorted(order):
        pairs = {i for i in range(rnd % 2, len(order) - 1, 2) if order[i] > order[i + 1]}
        rnd += 1
        if not pairs:
            continue
        stage = []
        i = 0
        while i < len(order):
            if i in pairs:
                a, b = order[i], order[i + 1]
                ident = f"cross:{len(swaps) + 1}"
                stage.append(Unit("crossover", ident, (lane_of[a], lane_of[b]),
                                  (lane_of[b], lane_of[a]), at=_at(4, i)))
                slot[lane_of[b]], slot[lane_of[a]] = i, i + 1
                swaps.append((a, b, ident))
                units_on[a].append(ident)
                units_on[b].append(ident)
                order[i], order[i + 1] = b, a
                i += 2
            else:
                stage.append(passing(lane_of[order[i]], f"x{rnd}"))
                i += 1
        stages.append(stage)
        for p, t in enumerate(order):
            positions[t].append(p)

    if m:
        stages.append([
            Unit("clause", f"clause:{j + 1}", tuple(lane_of[3 * j + p] for p in range(3)), (),
                 at=_at(2, 3 * j))
            for j in range(m)
        ])
        for t in range(3 * m):
            units_on[t].append(f"clause:{t // 3 + 1}")

    comp = compose(stages)
    where = {p.ident: p.top_left for p in comp.placements}
    routes = [
        Route(t, var_of[t], polarity[t], tuple(units_on[t]), tuple(positions[t]))
        for t in range(3 * m)
    ]
    crossings = [Crossing((a, b), ident, where[ident]) for a, b, ident in swaps]
    return LayoutPlan(stages, comp.placements, routes, crossings, comp)


def segment_crossings(routes: list[Route]) -> int:
    """Count route crossings geometrically, pair by pair and segment by segment.

    Each route is the polyline through (stage, lane position) in the crossover
    section.  Used to cross-check the planner's own crossing list.
    """

    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (v > 0) - (v < 0)

    def proper(a, b, c, d):
        return orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0

    # both polylines advance one stage per segment, so segments spanning
    # different stage intervals can meet at most in an endpoint
    total = 0
    for i in range(len(routes)):
        pi = list(enumerate(routes[i].lane_positions))
        for j in range(i + 1, len(routes)):
            pj = list(enumerate(routes[j].lane_positions))
            for s in range(min(len(pi), len(pj)) - 1):
                if proper(pi[s], pi[s + 1], pj[s], pj[s + 1]):
                    total += 1
    return total


# -- reduction ------------------------------------------------------------------


def reduce(f: CNF) -> ReductionArtifact:
    plan = plan_layout(f)
    comp = plan.composition
    probes = tuple(
        VariableProbe(
            v,
            tuple(comp.to_global(f"var:{v}", c) for c in PROBES),
            (0,) * len(PROBES),
            (1,) * len(PROBES),
        )
        for v in range(1, f.num_vars + 1)
    )
    kinds = [p.kind for p in plan.placements]
    inventory = {
        "variable": kinds.count("variable"),
        "clause": kinds.count("clause"),
        "split": kinds.count("split"),
        "negation": kinds.count("negation"),
        "crossover": kinds.count("crossover"),
        "terminator": kinds.count("terminator"),
    }
    return ReductionArtifact(comp.board, probes, inventory, f, plan)


def inventory_bounds_hold(art: ReductionArtifact) -> bool:
    f = art.formula
    inv = art.inventory
    m = f.num_clauses
    used = sum(1 for v in range(1, f.num_vars + 1) if f.occurrences(v))
    return (
        inv["variable"] == f.num_vars
        and inv["clause"] == m
        and inv["split"] == 3 * m - used
        and inv["negation"] == f.negative_occurrences
        and inv["crossover"] == len(art.plan.crossings) <= comb(3 * m, 2)
        and inv["terminator"] == f.num_vars - used
    )


def decode(decode_map, solution: Solution) -> tuple[int, ...]:
    """Truth assignment read off the probe cells; ``decode_map`` is an artifact,
    a probe tuple, or a parsed sidecar."""
    if isinstance(decode_map, ReductionArtifact):
        probes = decode_map.decode_map
    elif isinstance(decode_map, DecodeMap):
        probes = decode_map.probes
    else:
        probes = tuple(decode_map)
    if not probes:
        raise DecodeError("decode map lists no variables")
    out = []
    for p in probes:
        seen = tuple(int(c in solution.squares) for c in p.cells)
        if seen == p.true_pattern:
            out.append(1)
        elif seen == p.false_pattern:
            out.append(0)
        else:
            raise DecodeError(
                f"variable {p.var}: probe pattern {seen} matches neither completion"
            )
    return tuple(out)


def format_model(assignment) -> str:
    return "v " + " ".join(str(i if b else -i) for i, b in enumerate(assignment, 1)) + " 0"


# -- decode-map sidecar ---------------------------------------------------------


def dump_decode_map(art: ReductionArtifact) -> str:
    """JSON sidecar holding the probe cells, the formula and the board itself."""
    doc = {
        "format": "evolomino-decode 1",
        "rows": art.board.rows,
        "cols": art.board.cols,
        "formula": art.formula.to_dimacs(),
        "board": serialize_board(art.board),
        "variables": [
            {
                "var": p.var,
                "probe": [[c.row, c.col] for c in p.cells],
                "true": list(p.true_pattern),
                "false": list(p.false_pattern),
            }
            for p in art.decode_map
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class DecodeMap:
    rows: int
    cols: int
    probes: tuple[VariableProbe, ...]
    board: Board | None = None


def load_decode_map(text: str) -> DecodeMap:
    try:
        doc = json.loads(text)
        if not isinstance(doc, dict) or doc.get("format") != "evolomino-decode 1":
            raise DecodeError("not an evolomino decode map")
        probes = tuple(
            VariableProbe(
                int(e["var"]),
                tuple(Cell(int(r), int(c)) for r, c in e["probe"]),
                tuple(int(x) for x in e["true"]),
                tuple(int(x) for x in e["false"]),
            )
            for e in doc["variables"]
        )
        board = parse_board(doc["board"]) if doc.get("board") else None
        return DecodeMap(int(doc["rows"]), int(doc["cols"]), probes, board)
    except DecodeError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise DecodeError(f"malformed decode map: {e}") from None


# -- parsimony ------------------------------------------------------------------


@dataclass(frozen=True)
class ParsimonyReport:
    sat_count: int
    puzzle_count: int | None
    status: str  # solver status; "budget-exhausted" leaves puzzle_count None

    @property
    def equal(self) -> bool:
        return self.puzzle_count is not None and self.sat_count == self.puzzle_count


def check_parsimony(f: CNF, budget: int | None = None) -> ParsimonyReport:
    sat = truth_table_count(f)
    out = count_solutions(reduce(f).board, SolveConfig(node_budget=budget))
    return ParsimonyReport(sat, out.count, out.status)
