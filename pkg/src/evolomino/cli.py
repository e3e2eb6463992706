"""Command-line front end.

Exit codes: 0 for success (valid, sat, equal), 2 for a negative answer
(invalid, unsat, unequal), 1 for usage errors, unreadable or malformed input,
and searches that ran out of budget without an answer.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .board import BoardError, parse_board, parse_solution, serialize_board, serialize_solution
from .oracle import OracleTooLarge, oracle_count, oracle_solutions
from .reducer.cnf import CNFError, parse_cnf
from .reducer.reduction import (
    DecodeError,
    check_parsimony,
    decode,
    dump_decode_map,
    format_model,
    load_decode_map,
    reduce,
)
from .render import RenderOptions, render
from .solver import SolveConfig, count_solutions, parallel_count, solve
from .verify import verify

OK, FAIL, NEGATIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(FAIL, f"{self.prog}: error: {message}\n")


class _Budget(Exception):
    def __init__(self, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config(args) -> SolveConfig:
    return SolveConfig(count_limit=getattr(args, "limit", None), node_budget=args.budget,
                       cell_order=args.order)


def _count(board, args):
    if args.oracle:
        if args.limit is None:
            return oracle_count(board), None
        return min(oracle_count(board), args.limit), None
    cfg = _config(args)
    out = parallel_count(board, cfg, args.jobs) if args.jobs > 1 else count_solutions(board, cfg)
    if out.status == "budget-exhausted":
        raise _Budget(out.nodes)
    return out.count, out.witness


# -- subcommands ----------------------------------------------------------------


def cmd_verify(args) -> int:
    board = parse_board(_read(args.board))
    report = verify(board, parse_solution(_read(args.solution), board))
    if report.valid:
        print("valid")
        return OK
    shown = report.violations if args.all else report.violations[:1]
    for v in shown:
        print(v)
    return NEGATIVE


def cmd_solve(args) -> int:
    board = parse_board(_read(args.board))
    if args.count:
        n, _ = _count(board, args)
        print(n)
        return OK if n else NEGATIVE
    if args.oracle:
        sols = oracle_solutions(board)
        witness = sols[0] if sols else None
    elif args.jobs > 1:
        out = parallel_count(board, _config(args), args.jobs, stop_after=1)
        if out.status == "budget-exhausted" and out.witness is None:
            raise _Budget(out.nodes)
        witness = out.witness
    else:
        out = solve(board, _config(args))
        if out.status == "budget-exhausted":
            raise _Budget(out.nodes)
        witness = out.witness
    if witness is None:
        print("unsat", file=sys.stderr)
        return NEGATIVE
    _write(args.output, serialize_solution(board, witness))
    return OK


def cmd_count(args) -> int:
    board = parse_board(_read(args.board))
    n, _ = _count(board, args)
    print(n)
    return OK if n else NEGATIVE


def cmd_reduce(args) -> int:
    art = reduce(parse_cnf(_read(args.cnf)))
    _write(args.output, serialize_board(art.board))
    if args.emit_decode_map:
        _write(args.emit_decode_map, dump_decode_map(art))
    inv = " ".join(f"{k}={v}" for k, v in art.inventory.items())
    print(f"board {art.board.rows}x{art.board.cols} {inv}", file=sys.stderr)
    return OK


def cmd_decode(args) -> int:
    dmap = load_decode_map(_read(args.sidecar))
    text = _read(args.solution)
    sol = parse_solution(text, dmap.board)
    if dmap.board is not None:
        report = verify(dmap.board, sol)
        if not report.valid:
            print(f"solution is not valid: {report.violations[0]}", file=sys.stderr)
            return NEGATIVE
    try:
        model = decode(dmap, sol)
    except DecodeError as e:
        print(e, file=sys.stderr)
        return NEGATIVE
    print(format_model(model))
    return OK


def cmd_parsimony(args) -> int:
    rep = check_parsimony(parse_cnf(_read(args.cnf)), args.budget)
    if rep.puzzle_count is None:
        raise _Budget(args.budget)
    print(f"sat={rep.sat_count} puzzle={rep.puzzle_count} {'PASS' if rep.equal else 'FAIL'}")
    return OK if rep.equal else NEGATIVE


def cmd_render(args) -> int:
    board = parse_board(_read(args.board))
    overlay = parse_solution(_read(args.solution), board) if args.solution else None
    opts = RenderOptions(args.format, args.cell_px, not args.no_arrows, overlay)
    _write(args.output, render(board, opts))
    return OK


# -- parser ---------------------------------------------------------------------


def _search_flags(p):
    p.add_argument("--budget", type=int, metavar="N", help="stop after N search nodes")
    p.add_argument("--limit", type=int, metavar="N", help="stop counting after N solutions")
    p.add_argument("--oracle", action="store_true", help="use exhaustive enumeration instead")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    p.add_argument("--order", default="flood", choices=("flood", "arrow", "rowmajor"),
                   help="cell branching order")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="evolomino", description="Evolomino boards: verify, solve, count, reduce 3-SAT.")
    ap.add_argument("--version", action="version", version=f"evolomino {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("verify", help="check a solution against a board")
    p.add_argument("board")
    p.add_argument("solution")
    p.add_argument("--all", action="store_true", help="print every violation, not just the first")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="print the first solution, or the count with --count")
    p.add_argument("board")
    p.add_argument("--count", action="store_true")
    p.add_argument("-o", "--output", metavar="PATH")
    _search_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="print the number of solutions")
    p.add_argument("board")
    _search_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("reduce", help="compile a DIMACS 3-CNF formula into a board")
    p.add_argument("cnf")
    p.add_argument("-o", "--output", metavar="PATH", help="board file (default: standard output)")
    p.add_argument("--emit-decode-map", metavar="PATH", help="write the JSON decode map here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("decode", help="read a truth assignment off a solution")
    p.add_argument("sidecar")
    p.add_argument("solution")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("parsimony", help="compare #SAT with the puzzle's solution count")
    p.add_argument("cnf")
    p.add_argument("--budget", type=int, metavar="N")
    p.set_defaults(func=cmd_parsimony)

    p = sub.add_parser("render", help="draw a board as ASCII or SVG")
    p.add_argument("board")
    p.add_argument("--solution", metavar="PATH", help="overlay this solution")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--cell-px", type=int, default=24, metavar="N")
    p.add_argument("--no-arrows", action="store_true")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command is None:
        ap.print_usage(sys.stderr)
        return FAIL
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    if getattr(args, "cell_px", 1) <= 0:
        ap.error("--cell-px must be positive")
    try:
        return args.func(args)
    except (BoardError, CNFError, DecodeError, OracleTooLarge, _Budget) as e:
        print(f"evolomino: {e}", file=sys.stderr)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return FAIL
    except OSError as e:
        print(f"evolomino: {e.filename or ''}: {e.strerror}", file=sys.stderr)
    except UnicodeDecodeError as e:
        print(f"evolomino: input is not UTF-8 text: {e.reason}", file=sys.stderr)
    return FAIL


if __name__ == "__main__":
    sys.exit(main())
