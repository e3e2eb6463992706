"""Randomized invariants, 1000 cases each."""

import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from evolomino.board import (
    Cell,
    Solution,
    blocks_of,
    components,
    extends_by_one,
    normalize,
    parse_board,
    serialize_board,
)
from evolomino.solver import PRUNING_RULES, SolveConfig, count_solutions

from helpers import random_board

CASES = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])

seeds = st.randoms(use_true_random=False)


@st.composite
def polyominoes(draw, max_size=8):
    """Random 4-connected cell set grown one square at a time."""
    size = draw(st.integers(1, max_size))
    cells = [(draw(st.integers(-20, 20)), draw(st.integers(-20, 20)))]
    while len(cells) < size:
        r, c = draw(st.sampled_from(cells))
        dr, dc = draw(st.sampled_from(((0, 1), (0, -1), (1, 0), (-1, 0))))
        if (r + dr, c + dc) not in cells:
            cells.append((r + dr, c + dc))
    return frozenset(cells)


def _translate(cells, dr, dc):
    return frozenset((r + dr, c + dc) for r, c in cells)


def _rotate(cells):
    return frozenset((c, -r) for r, c in cells)


def _is_translate(a, b):
    """True if some shift maps ``a`` onto ``b`` exactly (no normalization)."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    ar, ac = min(a)
    return any(_translate(a, br - ar, bc - ac) == b for br, bc in b)


# -- parsing --------------------------------------------------------------------


@CASES
@given(seeds)
def test_board_round_trip(rng):
    b = random_board(rng)
    text = serialize_board(b)
    assert parse_board(text) == b
    assert serialize_board(parse_board(text)) == text


# -- shapes ---------------------------------------------------------------------


@CASES
@given(polyominoes(), st.integers(-50, 50), st.integers(-50, 50))
def test_shape_is_translation_invariant(cells, dr, dc):
    assert normalize(_translate(cells, dr, dc)) == normalize(cells)


@CASES
@given(polyominoes())
def test_shape_is_orientation_sensitive(cells):
    turned = _rotate(cells)
    assert (normalize(turned) == normalize(cells)) == _is_translate(cells, turned)
    mirrored = frozenset((r, -c) for r, c in cells)
    assert (normalize(mirrored) == normalize(cells)) == _is_translate(cells, mirrored)


@st.composite
def shape_pairs(draw):
    a = draw(polyominoes(max_size=7))
    if draw(st.booleans()):
        # grow ``a`` by a neighbouring square and move it somewhere else
        frontier = sorted({(r + dr, c + dc) for r, c in a
                           for dr, dc in ((0, 1), (0, -1), (1, 0), (-1, 0))} - a)
        b = a | {draw(st.sampled_from(frontier))}
        if draw(st.booleans()):
            b = _rotate(b)
        b = _translate(b, draw(st.integers(-9, 9)), draw(st.integers(-9, 9)))
    else:
        b = draw(polyominoes())
    return a, b


@CASES
@given(shape_pairs())
def test_extends_by_one_matches_removal_oracle(pair):
    a, b = pair
    expected = any(_is_translate(a, b - {c}) for c in b)
    assert extends_by_one(normalize(a), normalize(b)) == expected


# -- blocks ---------------------------------------------------------------------


@CASES
@given(st.frozensets(st.tuples(st.integers(1, 7), st.integers(1, 7)), max_size=30))
def test_blocks_partition_the_squares(cells):
    sq = frozenset(Cell(r, c) for r, c in cells)
    blocks = blocks_of(None, Solution(sq))
    assert frozenset().union(*(b.cells for b in blocks)) == sq
    assert sum(len(b) for b in blocks) == len(sq)
    for b in blocks:
        assert len(components(b.cells)) == 1
        # maximal: no square outside the block touches it
        touching = {n for c in b.cells for n in c.neighbours()} & sq
        assert touching <= b.cells
    assert [b.anchor for b in blocks] == sorted(b.anchor for b in blocks)


# -- search ---------------------------------------------------------------------


@CASES
@given(seeds)
def test_pruning_is_admissible(rng):
    b = random_board(rng, max_free=10)
    full = count_solutions(b)
    for rule in PRUNING_RULES:
        part = count_solutions(b, SolveConfig(pruning=frozenset(PRUNING_RULES) - {rule}))
        assert part.count == full.count
    bare = count_solutions(b, SolveConfig(pruning=frozenset()))
    assert bare.count == full.count
    assert full.nodes <= bare.nodes
