"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Timings exclude the one-off compile of the enumeration kernel, which is
warmed up on a 1x1 board before any clock starts.
"""

import random
import time
from contextlib import contextmanager
from math import comb

import pytest

from evolomino.board import Cell, parse_board
from evolomino.oracle import join_count, oracle_count
from evolomino.reducer.cnf import parse_cnf, random_cnf, truth_table_count
from evolomino.reducer.fixtures import (
    clause_fixture,
    crossover_fixture,
    split_fixture,
    variable_fixture,
)
from evolomino.reducer.reduction import SIZE_K, decode, reduce, segment_crossings
from evolomino.reducer.tiles import read_data
from evolomino.solver import count_solutions, iter_solutions, solve
from evolomino.verify import verify

import test_properties
from helpers import ACCEPTANCE, board, random_board, solution


@pytest.fixture(scope="module", autouse=True)
def warm_kernel():
    oracle_count(parse_board("evolomino 1\nsize 1 1\ngrid\n.\narrows 0\n"))


@contextmanager
def criterion(n, title, limit):
    note = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield note
        ok = True
    finally:
        dt = time.perf_counter() - t0
        in_time = dt < limit
        verdict = "PASS" if ok and in_time else "FAIL"
        extra = f" ({note['detail']})" if "detail" in note else ""
        budget = f" of {limit:g}s" if limit != float("inf") else ", no time limit"
        line = f"criterion {n}: {verdict}  {title}  {dt:.2f}s{budget}{extra}"
        ACCEPTANCE[n] = line
        print(line)
    assert in_time, f"criterion {n} took {dt:.2f}s, limit {limit:g}s"


def _crop(sol, placement):
    top = placement.top_left
    return frozenset(
        Cell(c.row - top.row + 1, c.col - top.col + 1)
        for c in sol.squares
        if top.row <= c.row < top.row + placement.rows and top.col <= c.col < top.col + placement.cols
    )


def test_criterion_1_fig1():
    with criterion(1, "Fig. 1 verify / solve / oracle", 1.0) as note:
        b = board("fig1.board")
        published = solution("fig1.solution", b)
        assert verify(b, published).valid
        out = count_solutions(b)
        assert out.witness == published
        total = oracle_count(b)
        assert total == out.count >= 1
        note["detail"] = f"{total} solution(s), unique" if total == 1 else f"{total} solutions"


def test_criterion_2_gadget_counts():
    with criterion(2, "gadget counts by search and by enumeration", 30.0) as note:
        counts = {}
        for name, make, expected, second in [
            ("variable", variable_fixture, 2, oracle_count),
            ("negation", variable_fixture, 2, oracle_count),
            ("split", split_fixture, 2, oracle_count),
            # 46 free cells rule out plain enumeration; the block join is exhaustive too
            ("crossover", crossover_fixture, 4, join_count),
        ]:
            b = make().board
            got = count_solutions(b).count
            assert got == second(b) == expected, name
            counts[name] = got

        # the negation tile's two completions are the published ones
        comp = variable_fixture()
        neg = next(p for p in comp.placements if p.kind == "negation")
        raw = board("fig3_negation.board")
        published = {solution(f"{n}.solution", raw).squares for n in ("fig3b", "fig3c")}
        assert {_crop(s, neg) for s in iter_solutions(comp.board)} == published
        note["detail"] = " ".join(f"{k}={v}" for k, v in counts.items())


def test_criterion_3_clause_truth_table():
    with criterion(3, "clause gadget solvable iff some input is true", 60.0) as note:
        table = {}
        for bits in range(8):
            inputs = tuple(bool(bits >> k & 1) for k in range(3))
            table[inputs] = solve(clause_fixture(inputs).board).status
        for inputs, status in table.items():
            assert status == ("sat" if any(inputs) else "unsat"), inputs
        note["detail"] = f"{sum(s == 'sat' for s in table.values())}/8 solvable"


def test_criterion_4_parsimony():
    with criterion(4, "puzzle count equals #SAT", 600.0) as note:
        fig7 = parse_cnf(read_data("fig7.cnf"))
        assert truth_table_count(fig7) == 12
        assert count_solutions(reduce(fig7).board).count == 12

        rng = random.Random(2024)
        for _ in range(50):
            f = random_cnf(rng, rng.randint(1, 4), rng.randint(1, 3))
            art = reduce(f)
            out = count_solutions(art.board)
            assert out.count == truth_table_count(f), str(f)
            if out.witness is not None:
                assert f.evaluate(decode(art, out.witness)), str(f)
        note["detail"] = "Fig. 7 = 12, 50 random formulas exact"


def test_criterion_5_inventory():
    with criterion(5, "inventory identities and size bound", 60.0) as note:
        rng = random.Random(77)
        worst = 0.0
        done = 0
        while done < 200:
            n, m = rng.randint(1, 8), rng.randint(1, 10)
            f = random_cnf(rng, n, m)
            if any(f.occurrences(v) == 0 for v in range(1, n + 1)):
                continue  # the split identity presumes every variable occurs
            art = reduce(f)
            inv = art.inventory
            assert inv["variable"] == n
            assert inv["clause"] == m
            assert inv["split"] == 3 * m - n
            assert inv["negation"] == f.negative_occurrences
            assert inv["crossover"] == len(art.plan.crossings) == segment_crossings(art.plan.routes)
            assert inv["crossover"] <= comb(3 * m, 2)
            side = max(art.board.rows, art.board.cols)
            assert side <= SIZE_K * (m * m + n)
            worst = max(worst, side / (m * m + n))
            done += 1
        note["detail"] = f"K={SIZE_K}, worst side/(m^2+n)={worst:.1f}"


def test_criterion_6_solver_vs_oracle():
    with criterion(6, "search equals enumeration on random boards", 300.0) as note:
        rng = random.Random(6)
        nonzero = 0
        for _ in range(300):
            b = random_board(rng, max_free=18)
            assert len(b.free_cells) <= 18
            got = count_solutions(b).count
            assert got == oracle_count(b)
            nonzero += got > 0
        note["detail"] = f"300 boards, {nonzero} with solutions"


PROPERTIES = [
    test_properties.test_board_round_trip,
    test_properties.test_shape_is_translation_invariant,
    test_properties.test_shape_is_orientation_sensitive,
    test_properties.test_extends_by_one_matches_removal_oracle,
    test_properties.test_pruning_is_admissible,
    test_properties.test_blocks_partition_the_squares,
]


def test_criterion_7_properties():
    with criterion(7, "property suites at 1000 cases each", float("inf")) as note:
        assert test_properties.CASES.max_examples >= 1000
        for prop in PROPERTIES:
            prop()
        note["detail"] = f"{len(PROPERTIES)} suites"
