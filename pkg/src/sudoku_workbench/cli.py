"""Command line front end: solve, check, replay, report, serve.

Exit codes: 0 success, 1 unmet expectation (non-unique puzzle), 2 bad
input (unreadable file, malformed puzzle or ledger, contradiction), 3 the
templates stalled before completing the grid, 4 replay divergence.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import (
    IntegrityError,
    LedgerError,
    PuzzleFormatError,
    ReplayDivergence,
    UsageError,
)
from .grid import ALL_CELLS, Grid, oneline, parse_grid, render
from .ledger import Ledger, reviewer_report
from .oracle import auto_fixpoint, brute_force_solve
from .workbench import replay

EXIT_OK = 0
EXIT_UNMET = 1
EXIT_INPUT = 2
EXIT_STALLED = 3
EXIT_DIVERGED = 4


def _read_puzzle(path: str) -> Grid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PuzzleFormatError(f"cannot read {path}: {exc}") from exc
    return parse_grid(text)


def _candidate_table(grid: Grid) -> str:
    """One line per undetermined cell: cell code and its candidate view."""
    lines = []
    for ref in ALL_CELLS:
        state = grid.at(ref)
        if not state.is_determined:
            cands = "".join(str(v) for v in sorted(state.candidate_view()))
            lines.append(f"{ref.code()}: {cands}")
    return "\n".join(lines)


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        grid = _read_puzzle(args.puzzle)
    except PuzzleFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        final, records = auto_fixpoint(grid)
    except IntegrityError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_INPUT
    ledger = Ledger(puzzle=oneline(grid), records=list(records))
    out = Path(args.ledger_out) if args.ledger_out else Path(args.puzzle + ".ledger")
    out.write_text(ledger.serialize())
    print(render(final))
    if args.candidates and not final.is_complete():
        print()
        print(_candidate_table(final))
    print(f"moves recorded: {len(records)} -> {out}")
    if not final.is_complete():
        print("stalled: the templates could not finish this grid", file=sys.stderr)
        return EXIT_STALLED
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    try:
        grid = _read_puzzle(args.puzzle)
        outcome = brute_force_solve(grid)
    except (PuzzleFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if outcome.solutions_found == 0:
        print("0 solutions")
        return EXIT_UNMET
    if outcome.solutions_found == 1:
        print("1 unique solution")
        print(oneline(outcome.solution))
        return EXIT_OK
    print("2+ solutions")
    return EXIT_UNMET


def _cmd_replay(args: argparse.Namespace) -> int:
    try:
        text = Path(args.ledger).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.ledger}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ledger = Ledger.parse(text)
    except LedgerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        grid, report = replay(ledger.puzzle, ledger.records)
    except ReplayDivergence as exc:
        print(f"divergence at seq {exc.seq}: {exc.detail}", file=sys.stderr)
        return EXIT_DIVERGED
    print(render(grid))
    print(f"replayed {report.total} records, {len(report.flagged)} flagged for review")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    try:
        ledger = Ledger.parse(Path(args.ledger).read_text())
    except OSError as exc:
        print(f"error: cannot read {args.ledger}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LedgerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(reviewer_report(ledger).render_text())
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    data_dir = args.data_dir or os.environ.get("DATA_DIR") or "./sessions"
    bind = args.bind or os.environ.get("BIND") or "127.0.0.1:8000"
    ui_dir = args.ui_dir or os.environ.get("UI_DIR") or None
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        print(f"error: --bind wants host:port, got {bind!r}", file=sys.stderr)
        return EXIT_INPUT
    app = create_app(data_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=int(port_text), log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sudoku-workbench",
        description="Audit-first Sudoku workbench: derive, record, replay.",
        epilog="exit codes: 0 ok, 1 unmet, 2 bad input, 3 stalled, 4 divergence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="derive as far as the templates go, writing a ledger")
    solve.add_argument("puzzle", help="file holding an 81-character puzzle")
    solve.add_argument("--ledger-out", help="ledger path (default: <puzzle>.ledger)")
    solve.add_argument(
        "--candidates", action="store_true", help="also print candidates of open cells"
    )
    solve.set_defaults(fn=_cmd_solve)

    check = sub.add_parser("check", help="count solutions with the brute-force solver")
    check.add_argument("puzzle", help="file holding an 81-character puzzle")
    check.set_defaults(fn=_cmd_check)

    rep = sub.add_parser("replay", help="re-execute a ledger and verify it byte for byte")
    rep.add_argument("ledger", help="ledger file to replay")
    rep.set_defaults(fn=_cmd_replay)

    report = sub.add_parser("report", help="summarize a ledger for review")
    report.add_argument("ledger", help="ledger file to summarize")
    report.set_defaults(fn=_cmd_report)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--data-dir", help="session ledger directory (env DATA_DIR)")
    serve.add_argument("--bind", help="host:port to listen on (env BIND)")
    serve.add_argument("--ui-dir", help="static UI directory to mount at / (env UI_DIR)")
    serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
