"""Compile the two-clause example formula into a board and read its solutions back.

Writes fig7_reduced.svg next to the current directory.

    python3 demos/reduce_fig7.py
"""

from evolomino.reducer.cnf import models, parse_cnf
from evolomino.reducer.reduction import decode, format_model, reduce
from evolomino.reducer.tiles import read_data
from evolomino.render import RenderOptions, render
from evolomino.solver import iter_solutions

f = parse_cnf(read_data("fig7.cnf"))
print("formula:", f)
art = reduce(f)
print(f"board: {art.board.rows}x{art.board.cols}")
print("inventory:", art.inventory)
for c in art.plan.crossings:
    print(f"crossing of occurrences {c.routes} at {c.at.row},{c.at.col} ({c.unit})")

decoded = [decode(art, s) for s in iter_solutions(art.board)]
print(f"\n{len(decoded)} puzzle solutions, {len(models(f))} satisfying assignments")
for a in sorted(decoded):
    print(" ", format_model(a), "satisfies" if f.evaluate(a) else "VIOLATES")
assert sorted(decoded) == sorted(models(f))

with open("fig7_reduced.svg", "w") as fh:
    fh.write(render(art.board, RenderOptions(format="svg", cell_px=8)))
print("\nwrote fig7_reduced.svg")
