"""Command-line interface.

    primefast check 1 2 3 4 5
    primefast check --range 1:100 --format csv
    primefast divcount --table
    primefast bench --suite array --repeats 3 --out array.csv

Exit codes: 0 success, 2 bad input, 3 I/O failure.
"""

import argparse
import json
import sys

import numpy as np

from . import bench
from .dispatch import FORCE_NAMES, Config, InputDomainError, is_prime
from .modmath import U64_MAX
from .sieve import CEILING_ENV, division_count

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

TABLE_ROWS = tuple(10**k for k in range(1, 9))


class UsageError(Exception):
    pass


def _parse_token(token):
    try:
        return int(token, 10)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"invalid number {token!r}") from None


def _parse_range(spec):
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"malformed range {spec!r}: expected A:B or A:B:STEP")
    try:
        start, stop, *rest = (int(p, 10) for p in parts)
    except ValueError:
        raise UsageError(f"malformed range {spec!r}: bounds must be integers") from None
    step = rest[0] if rest else 1
    if step < 1:
        raise UsageError(f"malformed range {spec!r}: step must be positive")
    if start < 0 or stop > U64_MAX:
        raise UsageError(f"malformed range {spec!r}: bounds must lie in [0, 2**64 - 1]")
    if stop < start:
        return np.empty(0, dtype=np.uint64)
    count = (stop - start) // step + 1
    return np.uint64(start) + np.arange(count, dtype=np.uint64) * np.uint64(step)


def _read_file(path):
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            tokens.extend(line.split())
    return tokens


def _collect(args):
    """Return ``(tokens, values)``: tokens first, then the range."""
    tokens = list(args.numbers)
    if args.file is not None:
        tokens.extend(_read_file(args.file))
    parsed = [_parse_token(t) for t in tokens]
    pieces = []
    if parsed:
        pieces.append(parsed)
    if args.range is not None:
        pieces.append(_parse_range(args.range))
    if not pieces:
        raise UsageError("nothing to check: give numbers, --range or --file")
    if len(pieces) == 1:
        return tokens, pieces[0]
    # keep big ints exact when mixing a token list and a range
    return tokens, list(parsed) + [int(v) for v in pieces[1]]


def _format(values, mask, fmt):
    bits = mask.tolist()
    if fmt == "mask":
        return " ".join("1" if b else "0" for b in bits)
    shown = [int(v) for v in values]
    if fmt == "csv":
        return "\n".join(f"{v},{int(b)}" for v, b in zip(shown, bits))
    decision = mask.decision
    return json.dumps({
        "values": shown,
        "is_prime": bits,
        "path": str(decision.kind) if decision else None,
    })


def cmd_check(args, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        tokens, values = _collect(args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc.strerror or exc}", file=err)
        return EXIT_IO

    config = Config(parallel=args.parallel, sieve_ceiling=args.sieve_ceiling)
    try:
        mask = is_prime(values, config, args.force_path)
    except InputDomainError as exc:
        token = tokens[exc.index] if tokens and exc.index < len(tokens) else exc.value
        print(f"error: {token} {exc.reason}", file=err)
        return EXIT_INPUT
    print(_format(values, mask, args.format), file=out)
    return EXIT_OK


def divcount_row(n):
    divisions = division_count(n)
    tenths = divisions * 10 // n
    return f"{n},{divisions},{tenths // 10}.{tenths % 10}"


def cmd_divcount(args, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    if args.table:
        rows = TABLE_ROWS
    else:
        if args.n < 1:
            print("error: --n must be at least 1", file=err)
            return EXIT_INPUT
        rows = (args.n,)
    if args.header:
        print("N,divisions,divisions_per_N", file=out)
    for n in rows:
        print(divcount_row(n), file=out)
    return EXIT_OK


def cmd_bench(args, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    if args.repeats < 1:
        print("error: --repeats must be at least 1", file=err)
        return EXIT_INPUT
    stream = out
    try:
        if args.out is not None:
            stream = open(args.out, "w", encoding="utf-8", newline="")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=err)
        return EXIT_IO
    try:
        records = bench.run_suite(args.suite, repeats=args.repeats, seed=args.seed)
        bench.write_csv(records, stream)
    finally:
        if stream is not out:
            stream.close()
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="primefast", description="Exact primality testing for 64-bit integers.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="test numbers for primality")
    check.add_argument("numbers", nargs="*", help="integers to test")
    check.add_argument("--range", metavar="A:B[:STEP]", help="inclusive range of integers")
    check.add_argument("--file", metavar="PATH", help="one integer per line, '#' starts a comment")
    check.add_argument("--format", choices=("mask", "csv", "json"), default="mask")
    check.add_argument("--force-path", choices=tuple(FORCE_NAMES), default="auto")
    check.add_argument("--parallel", action="store_true", help="split array work across threads")
    check.add_argument("--sieve-ceiling", type=int, default=None, metavar="N",
                       help=f"largest sieve allowed (default: ${CEILING_ENV} or 2**32)")
    check.set_defaults(func=cmd_check)

    divcount = sub.add_parser("divcount", help="divisions a sieve-then-divide test needs for 1..N")
    group = divcount.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, metavar="N")
    group.add_argument("--table", action="store_true", help="N = 10, 100, ..., 10**8")
    divcount.add_argument("--header", action="store_true", help="print a CSV header line first")
    divcount.set_defaults(func=cmd_divcount)

    bench_p = sub.add_parser("bench", help="time the evaluation paths")
    bench_p.add_argument("--suite", choices=tuple(bench.SUITES), required=True)
    bench_p.add_argument("--repeats", type=int, default=5)
    bench_p.add_argument("--seed", type=int, default=42)
    bench_p.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
    bench_p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
