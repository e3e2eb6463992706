"""Count the completions of each gadget and tabulate the clause gadget.

Each gadget is wrapped in a closed fixture (drivers below, caps above) so that
its ports are not left dangling.

    python3 demos/gadgets.py
"""

from itertools import product

from evolomino.oracle import join_count
from evolomino.reducer.fixtures import clause_fixture, crossover_fixture, split_fixture, variable_fixture
from evolomino.solver import count_solutions, solve

for name, make in [("variable + negation", variable_fixture), ("split", split_fixture),
                   ("crossover", crossover_fixture)]:
    b = make().board
    print(f"{name:20} {b.rows:>3}x{b.cols:<3} search={count_solutions(b).count}  join={join_count(b)}")

print("\nclause gadget, inputs forced:")
for bits in product((False, True), repeat=3):
    status = solve(clause_fixture(bits).board).status
    print("  " + " ".join("T" if x else "F" for x in bits), "->", status)
