"""Command-line entry point.

Exit status: 0 when every check passes (erratum rows allowed), 1 when a check
fails, 2 for unreadable or invalid input. CSV tables go to ``--out`` or, if
that is absent, to the directory named by ``FUZZYPROC_OUT``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from .errors import FuzzyProcError
from .runner import RunReport, emit_csv, format_cell, reproduce_paper, run
from .scenario import load_scenario

ENV_OUT = "FUZZYPROC_OUT"
DEFAULT_OUT = "fuzzyproc-out"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _out_dir(arg: str | None, default: str | None = None) -> Path | None:
    chosen = arg or os.environ.get(ENV_OUT) or default
    return Path(chosen) if chosen else None


def _print_checks(report: RunReport, stream) -> None:
    for c in report.checks:
        print(
            f"{c.status.upper():8s} {report.scenario_id}: {c.key} expected {format_cell(c.expected)} "
            f"got {format_cell(c.got)} (tol {format_cell(c.tolerance)})",
            file=stream,
        )


def _print_tables(report: RunReport, stream) -> None:
    print(f"# {report.scenario_id} ({report.kind}) {report.title}".rstrip(), file=stream)
    for t in report.tables:
        print(f"## {t.name}", file=stream)
        print(",".join(t.columns), file=stream)
        for r in t.rows:
            print(",".join(format_cell(v) for v in r), file=stream)


def _finish(report: RunReport, out: Path | None, stream) -> int:
    _print_tables(report, stream)
    _print_checks(report, stream)
    if out is not None:
        emit_csv(report, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_run(args, stream) -> int:
    return _finish(run(load_scenario(args.file)), _out_dir(args.out), stream)


def _cmd_sweep(args, stream) -> int:
    return _finish(run(load_scenario(args.file), alphas=args.alpha), _out_dir(args.out), stream)


def _cmd_validate(args, stream) -> int:
    s = load_scenario(args.file)
    print(f"ok {s.id} ({s.kind}), {len(s.checks)} checks", file=stream)
    return EXIT_OK


def _cmd_reproduce(args, stream) -> int:
    out = _out_dir(args.out, DEFAULT_OUT)
    reports, rows = reproduce_paper(out)
    width = max((len(f"{r[0]}: {r[1]}") for r in rows), default=10)
    for scen, key, exp, got, tol, status, note in rows:
        label = f"{scen}: {key}"
        extra = f"  [{note}]" if note else ""
        print(
            f"{status.upper():8s} {label:<{width}}  expected {format_cell(exp):>12}  got {format_cell(got):>12}{extra}",
            file=stream,
        )
    counts = {s: sum(r[5] == s for r in rows) for s in ("pass", "erratum", "fail")}
    print(f"{counts['pass']} pass, {counts['erratum']} erratum, {counts['fail']} fail; CSV in {out}", file=stream)
    return EXIT_OK if all(rep.ok for rep in reports) else EXIT_FAIL


def _alpha(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fuzzyproc", description="Run fuzzy process-engineering scenarios.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one scenario file")
    p.add_argument("file")
    p.add_argument("--out", help=f"directory for CSV tables (default: ${ENV_OUT})")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="run an flp scenario over the given alpha values")
    p.add_argument("file")
    p.add_argument("--alpha", type=_alpha, nargs="+", required=True)
    p.add_argument("--out", help=f"directory for CSV tables (default: ${ENV_OUT})")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("reproduce-paper", help="run every bundled scenario and print the check table")
    p.add_argument("--out", help=f"directory for CSV tables (default: ${ENV_OUT} or ./{DEFAULT_OUT})")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("validate", help="parse and validate a scenario file without running it")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)
    return ap


def main(argv: Sequence[str] | None = None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, stream)
    except (FuzzyProcError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
