import pytest

from evolomino.board import (
    Arrow,
    Board,
    BoardError,
    Cell,
    Solution,
    blocks_of,
    check_solution,
    components,
    extends_by_one,
    normalize,
    parse_board,
    parse_solution,
    serialize_board,
    serialize_solution,
    shape_of,
)

from helpers import board, solution

FIG1 = """\
evolomino 1
size 5 5
grid
.....
...#o
o....
.....
....#
arrows 3
arrow 5,1 5,2 5,3
arrow 3,1 2,1 1,1 1,2 1,3 1,4
arrow 4,5 4,4 3,4
"""


def test_fig1_parses_with_expected_geometry():
    b = parse_board(FIG1)
    assert (b.rows, b.cols) == (5, 5)
    assert b.shaded == {Cell(2, 4), Cell(5, 5)}
    assert b.predrawn == {Cell(2, 5), Cell(3, 1)}
    assert [len(a) for a in b.arrows] == [3, 6, 3]
    assert b.arrow_of(Cell(1, 1)) == 1
    assert b.arrow_of(Cell(2, 2)) is None


def test_serialize_is_canonical():
    b = parse_board(FIG1)
    assert serialize_board(b) == FIG1
    assert parse_board(serialize_board(b)) == b


def test_bundled_figures_round_trip():
    for name in ("fig1.board", "fig2_variable.board", "fig3_negation.board", "fig4_split.board",
                 "fig5_clause.board", "fig6_crossover.board", "fig7.board"):
        b = board(name)
        assert parse_board(serialize_board(b)) == b


def test_solution_round_trip():
    b = board("fig1.board")
    s = solution("fig1.solution", b)
    assert parse_solution(serialize_solution(b, s), b) == s
    assert len(s.squares) == 12


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "unexpected end of document"),
        ("evolomino 2\n", "expected 'evolomino 1'"),
        ("evolomino 1\nsize 2\n", "size"),
        ("evolomino 1\nsize 1 2\ngrid\n..\narrows 1\narrow 1,2 1,3\n", "leaves the board"),
        ("evolomino 1\nsize 1 2\ngrid\n.?\narrows 0\n", "glyph"),
        ("evolomino 1\nsize 1 2\ngrid\n.#\narrows 1\narrow 1,1 1,2\n", "shaded"),
        ("evolomino 1\nsize 2 2\ngrid\n..\n..\narrows 2\narrow 1,1 1,2\narrow 2,2 1,2\n", "conflict"),
        ("evolomino 1\nsize 1 3\ngrid\n...\narrows 1\narrow 1,1 1,3\n", "not adjacent"),
    ],
)
def test_malformed_boards_are_rejected(text, fragment):
    with pytest.raises(BoardError) as e:
        parse_board(text)
    assert fragment in str(e.value)


def test_arrow_cannot_revisit_a_cell():
    with pytest.raises(BoardError, match="twice"):
        Arrow((Cell(1, 1), Cell(1, 2), Cell(1, 1)))


def test_solution_structure_checks():
    b = parse_board(FIG1)
    with pytest.raises(BoardError, match="shaded"):
        check_solution(b, Solution(frozenset({Cell(2, 4)})))
    with pytest.raises(BoardError):
        parse_solution("solution 4 5\n.....\n.....\n.....\n.....\n", b)


def test_predrawn_square_must_be_kept():
    b = parse_board(FIG1)
    with pytest.raises(BoardError, match="pre-drawn"):
        check_solution(b, Solution(frozenset({Cell(3, 1)})))


def test_shape_normalization():
    s = normalize([(5, 7), (5, 8), (6, 7)])
    assert s.cells == {(0, 0), (0, 1), (1, 0)}
    assert shape_of([(1, 1), (1, 2), (2, 1)]) == s
    # an L and its mirror are different shapes
    assert normalize([(0, 0), (0, 1), (1, 1)]) != s


def test_extends_by_one_examples():
    dom = normalize([(0, 0), (0, 1)])
    assert extends_by_one(normalize([(0, 0)]), dom)
    assert extends_by_one(dom, normalize([(0, 0), (0, 1), (0, 2)]))
    assert extends_by_one(dom, normalize([(0, 0), (0, 1), (1, 1)]))
    assert not extends_by_one(normalize([(0, 0), (1, 0)]), normalize([(0, 0), (0, 1), (0, 2)]))
    assert not extends_by_one(dom, dom)


def test_blocks_sorted_by_smallest_cell():
    b = board("fig1.board")
    s = solution("fig1.solution", b)
    blocks = blocks_of(b, s)
    anchors = [blk.anchor for blk in blocks]
    assert anchors == sorted(anchors)
    assert sum(len(blk) for blk in blocks) == len(s.squares)


def test_components_split_diagonal_contact():
    comps = components({Cell(1, 1), Cell(2, 2)})
    assert comps == [frozenset({Cell(1, 1)}), frozenset({Cell(2, 2)})]


def test_board_rejects_predrawn_on_shade():
    with pytest.raises(BoardError, match="pre-drawn square on shaded"):
        Board(1, 1, frozenset({Cell(1, 1)}), frozenset({Cell(1, 1)}), ())
