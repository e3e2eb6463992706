"""Walk through the small example board: draw it, check the published answer, solve it.

    python3 demos/fig1_walkthrough.py
"""

from evolomino.board import parse_board, parse_solution
from evolomino.oracle import oracle_count
from evolomino.reducer.tiles import read_data
from evolomino.render import RenderOptions, render
from evolomino.solver import count_solutions
from evolomino.verify import arrow_block_sequence, verify

board = parse_board(read_data("fig1.board"))
print("board ('#' shaded, 'o' pre-drawn, arrow tips as > v < ^):")
print(render(board))

published = parse_solution(read_data("fig1.solution"), board)
print("published solution:")
print(render(board, RenderOptions(overlay=published)))
print("verifier says:", "valid" if verify(board, published).valid else "invalid")

# blocks along each arrow grow by one square at a time
for k in range(len(board.arrows)):
    sizes = [len(b) for b in arrow_block_sequence(board, published, k).blocks]
    print(f"arrow {k + 1}: block sizes {sizes}")

out = count_solutions(board)
print(f"search: {out.count} solution(s) in {out.nodes} nodes; matches published: {out.witness == published}")
print("exhaustive enumeration:", oracle_count(board))
