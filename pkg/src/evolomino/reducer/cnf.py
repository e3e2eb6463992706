"""3-CNF formulas: DIMACS parsing and truth-table model counting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class CNFError(ValueError):
    pass


Literal = tuple[int, bool]  # (variable, polarity); polarity False means negated


@dataclass(frozen=True)
class CNF:
    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise CNFError("a formula needs at least one variable")
        for i, cl in enumerate(self.clauses, 1):
            if len(cl) != 3:
                raise CNFError(f"clause {i} has {len(cl)} literals, expected exactly 3")
            for v, _ in cl:
                if not 1 <= v <= self.num_vars:
                    raise CNFError(f"clause {i}: variable {v} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment) -> bool:
        """``assignment[v - 1]`` is the value of variable v."""
        return all(any(bool(assignment[v - 1]) == pol for v, pol in cl) for cl in self.clauses)

    def occurrences(self, var: int) -> int:
        return sum(v == var for cl in self.clauses for v, _ in cl)

    @property
    def negative_occurrences(self) -> int:
        return sum(not pol for cl in self.clauses for _, pol in cl)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        for cl in self.clauses:
            lines.append(" ".join(str(v if pol else -v) for v, pol in cl) + " 0")
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        def lit(v, pol):
            return f"x{v}" if pol else f"~x{v}"

        return " & ".join("(" + " | ".join(lit(*l) for l in cl) + ")" for cl in self.clauses)


def parse_cnf(text: str) -> CNF:
    header = None
    tokens: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise CNFError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "cnf" or not all(p.isdigit() for p in parts[2:]):
                raise CNFError(f"line {lineno}: malformed header, expected 'p cnf <vars> <clauses>'")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise CNFError(f"line {lineno}: clause before the 'p cnf' header")
        for tok in line.split():
            try:
                tokens.append((lineno, int(tok)))
            except ValueError:
                raise CNFError(f"line {lineno}: not an integer literal: {tok!r}") from None
    if header is None:
        raise CNFError("missing 'p cnf' header")
    n, m = header
    clauses = []
    current: list[Literal] = []
    for lineno, lit in tokens:
        if lit == 0:
            if len(current) != 3:
                raise CNFError(
                    f"line {lineno}: clause {len(clauses) + 1} has {len(current)} literals, expected exactly 3"
                )
            clauses.append(tuple(current))
            current = []
            continue
        if abs(lit) > n:
            raise CNFError(f"line {lineno}: literal {lit} out of range for {n} variables")
        current.append((abs(lit), lit > 0))
    if current:
        raise CNFError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise CNFError(f"header announces {m} clauses, found {len(clauses)}")
    return CNF(n, tuple(clauses))


def truth_table_count(f: CNF) -> int:
    """#SAT by trying all 2^n assignments."""
    return sum(f.evaluate(bits) for bits in itertools.product((0, 1), repeat=f.num_vars))


def models(f: CNF) -> list[tuple[int, ...]]:
    return [bits for bits in itertools.product((0, 1), repeat=f.num_vars) if f.evaluate(bits)]


def random_cnf(rng, n: int, m: int) -> CNF:
    """Uniform random 3-CNF; a clause repeats a variable only when n < 3."""
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), 3) if n >= 3 else [rng.randint(1, n) for _ in range(3)]
        clauses.append(tuple((v, rng.random() < 0.5) for v in vs))
    return CNF(n, tuple(clauses))
