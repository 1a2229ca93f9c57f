"""``latin-census`` command line: count, verify and table subcommands."""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import harness, oracle
from .cache import ResultCache
from .errors import BudgetExceeded, InapplicableMethod

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INAPPLICABLE = 2
EXIT_BUDGET = 3


def parse_range(text: str) -> List[int]:
    """``"3"``, ``"0..6"`` or ``"2,4,7"`` (terms may mix) to a sorted list."""
    out = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            a, b = int(lo), int(hi)
            if a > b:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.update(range(a, b + 1))
        else:
            out.add(int(part))
    if not out:
        raise argparse.ArgumentTypeError(f"no values in {text!r}")
    return sorted(out)


def _range_arg(text: str) -> List[int]:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _methods_arg(text: str) -> List[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in names if x not in harness.METHOD_IDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s): {', '.join(bad)}")
    return names


def _budget_arg(text: str) -> int:
    # accept 1e9 as well as 1000000000
    value = float(text) if any(c in text for c in "eE.") else int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return int(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="result cache file (default: $LATIN_CENSUS_CACHE)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--budget", type=_budget_arg, help="override the default work limit")
    common.add_argument("--no-timings", action="store_true", help="report elapsed_ms as 0 for reproducible output")

    p = argparse.ArgumentParser(prog="latin-census", description="Exact counts of Latin rectangles and relatives.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="one exact value")
    c.add_argument("--m", type=int, default=None, help="rows (K, V); ignored for D, U, L")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--method", default="oracle", choices=harness.METHOD_IDS)
    c.add_argument("--quantity", default="K", choices=harness.QUANTITIES)
    c.add_argument("--witness", action="store_true", help="also print the first reduced rectangle (K only)")

    v = sub.add_parser("verify", parents=[common], help="cross-validate methods over a grid")
    v.add_argument("--min-m", type=int, default=2)
    v.add_argument("--max-m", type=int, required=True)
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--methods", type=_methods_arg, default=None, help="comma-separated method ids")
    v.add_argument("--format", choices=("text", "csv", "json"), default="text")

    t = sub.add_parser("table", parents=[common], help="value table using the cheapest method per cell")
    t.add_argument("--quantity", choices=harness.QUANTITIES, required=True)
    t.add_argument("--rows", type=_range_arg, default=None, help="m values for K and V, e.g. 2..4")
    t.add_argument("--cols", type=_range_arg, required=True, help="n values, e.g. 0..6 or 3,5")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--output", help="write here instead of stdout")
    return p


def _error(kind: str, message: str, code: int, **extra) -> int:
    payload = {"error": kind, "message": message, **extra}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def _cmd_count(args, cache: Optional[ResultCache]) -> int:
    q = args.quantity
    if q in ("K", "V") and args.m is None:
        return _error("usage", f"--m is required for quantity {q}", EXIT_INAPPLICABLE)
    m = harness.conventional_m(q, args.m if args.m is not None else 0, args.n)
    res = harness.evaluate(args.method, q, m, args.n, jobs=args.jobs, budget=args.budget, cache=cache)
    print(res.value)
    if args.witness:
        if q != "K" or not 1 <= m <= args.n:
            return _error("usage", "--witness needs quantity K with 1 <= m <= n", EXIT_INAPPLICABLE)
        rect = oracle.first_witness(m, args.n)
        for row in rect or []:
            print(" ".join(map(str, row)))
    return EXIT_OK


def _cmd_verify(args, cache: Optional[ResultCache]) -> int:
    report = harness.verify_grid(
        args.max_m,
        args.max_n,
        methods=args.methods,
        min_m=args.min_m,
        jobs=args.jobs,
        budget=args.budget,
        cache=cache,
        timings=not args.no_timings,
    )
    sys.stdout.write(harness.format_verify(report, args.format))
    return EXIT_OK if report.ok else EXIT_MISMATCH


def _cmd_table(args, cache: Optional[ResultCache]) -> int:
    rows = args.rows
    if args.quantity in ("K", "V") and rows is None:
        return _error("usage", f"--rows is required for quantity {args.quantity}", EXIT_INAPPLICABLE)
    table = harness.build_table(
        args.quantity,
        rows or [],
        args.cols,
        budget=args.budget,
        jobs=args.jobs,
        cache=cache,
        timings=not args.no_timings,
    )
    text = harness.table_to_csv(table) if args.format == "csv" else harness.table_to_json(table)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        return _error("usage", "--jobs must be at least 1", EXIT_INAPPLICABLE)
    cache = ResultCache.from_env(args.cache)
    handler = {"count": _cmd_count, "verify": _cmd_verify, "table": _cmd_table}[args.command]
    try:
        return handler(args, cache)
    except InapplicableMethod as exc:
        return _error("inapplicable_method", str(exc), EXIT_INAPPLICABLE)
    except BudgetExceeded as exc:
        return _error(
            "budget_exceeded", str(exc), EXIT_BUDGET, estimate=str(exc.estimate), budget=str(exc.budget)
        )
    except ValueError as exc:
        return _error("invalid_argument", str(exc), EXIT_INAPPLICABLE)


if __name__ == "__main__":
    sys.exit(main())
