"""Command-line interface: ``delannoy {compute,table,verify,bench}``.

Exit codes: 0 success, 1 verification disagreement, 2 usage error,
3 method refused the input (size cap or off-diagonal cell).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import MethodRefusal
from .methods import DelannoyMethod, MemoTable
from .verify import ALL_METHODS, DEFAULT_TOLERANCE, EXACT_METHODS, bench_methods, verify_grid

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3

FORMATS = ("table", "json", "csv")


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _method_list(text: str, allowed: Sequence[str]) -> list[str]:
    if text == "all":
        return list(allowed)
    names = [t.strip() for t in text.split(",") if t.strip()]
    unknown = [n for n in names if n not in allowed]
    if unknown or not names:
        raise UsageError(f"unknown method(s): {', '.join(unknown) or text!r}; choose from {', '.join(allowed)}")
    return names


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """Parse ``"8x8,32x32,100x20"``; a bare ``"n"`` means ``n x n``."""
    sizes = []
    for part in text.split(","):
        part = part.strip().lower()
        if not part:
            raise UsageError(f"empty size in {text!r}")
        pieces = part.split("x")
        if len(pieces) == 1:
            pieces = pieces * 2
        if len(pieces) != 2 or not all(s.isdigit() for s in pieces):
            raise UsageError(f"malformed size {part!r}; expected PxQ")
        sizes.append((int(pieces[0]), int(pieces[1])))
    return sizes


def _csv_text(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _aligned(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "".join(" ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def cmd_compute(args: argparse.Namespace) -> int:
    name = "recurrence3" if args.method == "default" else args.method
    try:
        method = DelannoyMethod.from_identifier(name)
    except KeyError:
        raise UsageError(f"unknown method {name!r}") from None
    try:
        value = method.evaluate(args.p, args.q)
    except MethodRefusal as exc:
        print(f"delannoy: {name} refused ({args.p},{args.q}): {exc}", file=sys.stderr)
        return EXIT_REFUSED
    print(value)
    return EXIT_OK


def render_table(p_max: int, q_max: int, fmt: str, highlight: bool = False) -> str:
    values = MemoTable(p_max, q_max).values
    if fmt == "json":
        doc = {
            "p_max": p_max,
            "q_max": q_max,
            "values": [[str(v) for v in row] for row in values],
        }
        if highlight:
            doc["diagonal"] = [str(values[n][n]) for n in range(min(p_max, q_max) + 1)]
        return json.dumps(doc) + "\n"
    if fmt == "csv":
        return _csv_text(values)
    cells = [
        [f"*{v}*" if highlight and p == q else str(v) for q, v in enumerate(row)]
        for p, row in enumerate(values)
    ]
    return _aligned(cells)


def cmd_table(args: argparse.Namespace) -> int:
    sys.stdout.write(render_table(args.p_max, args.q_max, args.format, args.highlight_diagonal))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.all:
        methods = list(ALL_METHODS)
    elif args.methods:
        methods = _method_list(args.methods, ALL_METHODS)
    else:
        methods = list(EXACT_METHODS)
    report = verify_grid(args.p_max, args.q_max, methods, tolerance=args.tolerance)
    text = report.to_json(include_timings=args.timings)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
        failed = [c for c in report.cells if not c.agreement]
        bad_props = [k for k, ok in report.properties.items() if not ok]
        print(
            f"{'PASS' if report.verdict else 'FAIL'}: {len(report.cells)} cells, "
            f"{len(failed)} disagreeing, properties failing: {', '.join(bad_props) or 'none'}"
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.verdict else EXIT_DISAGREE


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = parse_sizes(args.sizes)
    methods = _method_list(args.methods, EXACT_METHODS)
    records = bench_methods(sizes, repetitions=args.repetitions, methods=methods)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in records], indent=2))
    elif args.format == "csv":
        header = ["method", "p", "q", "wall_time_ns", "bit_length", "agrees", "skip_reason"]
        rows = [header]
        for r in records:
            rows.append(
                [r.method, r.p, r.q, r.wall_time_ns or "", r.bit_length or "",
                 "" if r.agrees is None else str(r.agrees).lower(), r.skip_reason or ""]
            )
        sys.stdout.write(_csv_text(rows))
    else:
        rows = [["method", "size", "median", "bits", "agrees"]]
        for r in records:
            size = f"{r.p}x{r.q}"
            if r.skipped:
                rows.append([r.method, size, "skipped", "-", r.skip_reason])
            else:
                rows.append([r.method, size, f"{r.wall_time_ns / 1e6:.3f} ms", str(r.bit_length),
                             "yes" if r.agrees else "NO"])
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(row[:4], widths)) + "  " + row[4])
    return EXIT_OK if all(r.agrees is not False for r in records) else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delannoy", description="Exact Delannoy numbers D(p,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print D(p,q)")
    p.add_argument("p", type=_nonneg)
    p.add_argument("q", type=_nonneg)
    p.add_argument("--method", default="default",
                   help=f"default (recurrence3) or one of: {', '.join(EXACT_METHODS)}")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="print the grid D(0..p_max, 0..q_max)")
    p.add_argument("p_max", type=_nonneg)
    p.add_argument("q_max", type=_nonneg)
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--highlight-diagonal", action="store_true",
                   help="mark central entries D(n,n)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="cross-check methods over a grid")
    p.add_argument("p_max", type=_nonneg)
    p.add_argument("q_max", type=_nonneg)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="every exact method plus the integral")
    group.add_argument("--methods", help=f"comma-separated subset of: {', '.join(ALL_METHODS)}")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help="relative tolerance for the integral estimate")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include per-method timings")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time methods at given sizes")
    p.add_argument("sizes", help='comma-separated sizes, e.g. "8x8,32x32,128x16"')
    p.add_argument("--methods", default="all")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--format", choices=FORMATS, default="table")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "repetitions", 1) < 1:
        parser.error("--repetitions must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"delannoy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
