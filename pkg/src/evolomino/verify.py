"""Rule checking for a candidate solution.

R1  every block holds exactly one square lying on an arrow
R2  every arrow passes through at least two blocks
R3  along an arrow, each block is the previous one plus a square (translation only)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import (
    Block,
    Board,
    BoardError,
    Cell,
    Solution,
    blocks_of,
    check_solution,
    extends_by_one,
    shape_of,
)


class BlockRevisitError(BoardError):
    """A block shows up in two separate runs along the same arrow."""


@dataclass(frozen=True)
class Violation:
    rule: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.rule} @ {self.subject}: {self.message}"


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class ArrowBlockSequence:
    arrow: int
    blocks: tuple[Block, ...]


def _block_index(blocks: list[Block]) -> dict[Cell, int]:
    return {c: i for i, b in enumerate(blocks) for c in b.cells}


def _sequence(board: Board, arrow_index: int, blocks: list[Block], owner: dict[Cell, int]):
    seq: list[int] = []
    prev = None
    for c in board.arrows[arrow_index].path:
        cur = owner.get(c)
        if cur is not None and cur != prev:
            if cur in seq:
                raise BlockRevisitError(
                    f"block-revisit: arrow {arrow_index + 1} re-enters the block at "
                    f"{blocks[cur].anchor.row},{blocks[cur].anchor.col}"
                )
            seq.append(cur)
        prev = cur
    return seq


def arrow_block_sequence(board: Board, solution: Solution, arrow: int) -> ArrowBlockSequence:
    """Blocks met along arrow number ``arrow`` (0-based), in path order."""
    blocks = blocks_of(board, solution)
    seq = _sequence(board, arrow, blocks, _block_index(blocks))
    return ArrowBlockSequence(arrow, tuple(blocks[i] for i in seq))


def verify(board: Board, solution: Solution) -> VerificationReport:
    check_solution(board, solution)
    blocks = blocks_of(board, solution)
    owner = _block_index(blocks)
    out: list[Violation] = []

    for b in blocks:
        on_arrow = [c for c in b.cells if board.arrow_of(c) is not None]
        if len(on_arrow) != 1:
            a = b.anchor
            out.append(
                Violation("R1", f"block {a.row},{a.col}",
                          f"block of {len(b)} has {len(on_arrow)} squares on arrows")
            )

    for k in range(len(board.arrows)):
        try:
            seq = _sequence(board, k, blocks, owner)
        except BlockRevisitError as e:
            out.append(Violation("R3", f"arrow {k + 1}", str(e)))
            continue
        if len(seq) < 2:
            out.append(Violation("R2", f"arrow {k + 1}", f"passes through {len(seq)} block(s)"))
        for i, j in zip(seq, seq[1:]):
            if not extends_by_one(shape_of(blocks[i]), shape_of(blocks[j])):
                a = blocks[j].anchor
                out.append(
                    Violation("R3", f"arrow {k + 1}",
                              f"block at {a.row},{a.col} does not grow the previous block by one square")
                )
    return VerificationReport(tuple(out))
