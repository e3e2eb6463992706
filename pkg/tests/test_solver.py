import random

import pytest

from evolomino.board import parse_board
from evolomino.reducer.fixtures import (
    clause_fixture,
    crossover_fixture,
    split_fixture,
    variable_fixture,
)
from evolomino.solver import (
    PRUNING_RULES,
    SolveConfig,
    cell_order,
    count_solutions,
    iter_solutions,
    parallel_count,
    solve,
)
from evolomino.verify import verify

from helpers import board, random_board, solution

ONE_BY_ONE = "evolomino 1\nsize 1 1\ngrid\n.\narrows 0\n"
TWO_CELL = "evolomino 1\nsize 2 1\ngrid\n.\n.\narrows 1\narrow 1,1 2,1\n"


def test_trivial_boards():
    assert count_solutions(parse_board(ONE_BY_ONE)).count == 1
    out = count_solutions(parse_board(TWO_CELL))
    assert (out.status, out.count) == ("unsat", 0)


def test_fig1_solution_found():
    b = board("fig1.board")
    out = count_solutions(b)
    assert out.status == "sat"
    assert out.count == 1
    assert out.witness == solution("fig1.solution", b)


@pytest.mark.parametrize("make, expected", [
    (variable_fixture, 2),
    (split_fixture, 2),
    (crossover_fixture, 4),
])
def test_gadget_fixture_counts(make, expected):
    assert count_solutions(make().board).count == expected


def test_all_false_clause_is_unsat():
    assert solve(clause_fixture((False, False, False)).board).status == "unsat"
    assert solve(clause_fixture((False, True, False)).board).status == "sat"


def test_every_solution_verifies():
    b = split_fixture().board
    sols = list(iter_solutions(b))
    assert len(sols) == 2
    assert all(verify(b, s).valid for s in sols)
    assert len({s.squares for s in sols}) == 2


def test_count_limit_stops_early():
    b = crossover_fixture().board
    out = count_solutions(b, SolveConfig(count_limit=2))
    assert out.count == 2


def test_budget_exhaustion_is_reported():
    b = crossover_fixture().board
    out = count_solutions(b, SolveConfig(node_budget=50))
    assert out.status == "budget-exhausted"
    assert out.count is None


def test_determinism():
    b = variable_fixture().board
    assert count_solutions(b) == count_solutions(b)


@pytest.mark.parametrize("how", ["flood", "arrow", "rowmajor"])
def test_orders_cover_free_cells_and_agree(how):
    b = board("fig1.board")
    order = cell_order(b, how)
    assert sorted(order) == sorted(b.white - b.predrawn)
    assert count_solutions(b, SolveConfig(cell_order=how)).count == 1


def test_unknown_order_rejected():
    with pytest.raises(ValueError):
        cell_order(board("fig1.board"), "spiral")


def test_pruning_rules_do_not_change_counts():
    rng = random.Random(5)
    for _ in range(60):
        b = random_board(rng, max_free=14)
        full = count_solutions(b)
        for rule in PRUNING_RULES:
            cfg = SolveConfig(pruning=frozenset(PRUNING_RULES) - {rule})
            assert count_solutions(b, cfg).count == full.count


@pytest.mark.parametrize("rule", ["progress", "capacity"])
def test_each_rule_saves_nodes(rule):
    b = board("fig1.board")
    on = count_solutions(b)
    off = count_solutions(b, SolveConfig(pruning=frozenset(PRUNING_RULES) - {rule}))
    assert on.count == off.count == 1
    assert on.nodes < off.nodes


def test_parallel_matches_sequential():
    b = crossover_fixture().board
    seq = count_solutions(b)
    par = parallel_count(b, jobs=2)
    assert (par.status, par.count, par.witness) == (seq.status, seq.count, seq.witness)


def test_parallel_first_witness():
    b = board("fig1.board")
    par = parallel_count(b, jobs=2, stop_after=1)
    assert par.witness == solve(b).witness
