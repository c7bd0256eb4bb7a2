"""Benchmark suites behind ``primefast bench``.

Every suite yields :class:`BenchRecord` rows: one per timed repeat, then a
``median`` row per group.  Inputs depend only on the seed.
"""

import csv
import io
import random
import statistics
import time
from dataclasses import astuple, dataclass

import numpy as np

from .dispatch import Config, HeuristicModel, PathKind, choose_array_path, is_prime
from .millerrabin import is_prime_u64

CSV_COLUMNS = ("label", "element_count", "max_value", "path", "wall_time_ns", "checksum")

SCALAR_BITS = (4, 8, 16, 24, 32, 36, 40, 44, 48, 50, 52, 56, 60, 64)
SCALAR_KINDS = ("prime", "odd", "random")
ARRAY_SIZES = (10**4, 10**5, 10**6)
ARRAY_MODES = ("sqrt", "binsearch", "auto")
CROSSOVER_COUNTS = (1_000, 10_000, 100_000)
CROSSOVER_MAXIMA = (10**4, 10**5, 10**6, 10**7)

# benchmarks always run single threaded
_BENCH_CONFIG = Config(parallel=False)


@dataclass(frozen=True)
class BenchRecord:
    label: str
    element_count: int
    max_value: int
    path: str
    wall_time_ns: int
    checksum: int


def write_csv(records, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(astuple(rec))


def read_csv(stream) -> list:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected columns {reader.fieldnames}")
    text = {"label", "path"}
    return [BenchRecord(**{k: (v if k in text else int(v)) for k, v in row.items()}) for row in reader]


def random_kbit(rng: random.Random, bits: int, kind: str) -> int:
    """Draw a ``bits``-bit value from ``[2**(bits-1), 2**bits - 1]``.

    ``kind`` is "random", "odd" or "prime"; primes are found by
    rejection sampling.
    """
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    if kind == "random":
        return rng.randint(lo, hi)
    if kind == "odd":
        return rng.randint(lo, hi) | 1
    if kind == "prime":
        while True:
            n = rng.randint(lo, hi) | 1
            if is_prime_u64(n):
                return n
    raise ValueError(f"unknown value kind {kind!r}")


def _timed(values, force_path=None):
    start = time.perf_counter_ns()
    mask = is_prime(values, _BENCH_CONFIG, force_path)
    elapsed = time.perf_counter_ns() - start
    return mask, elapsed


def _median_row(label, rows):
    times = [r.wall_time_ns for r in rows]
    paths = {r.path for r in rows}
    return BenchRecord(
        label=f"{label}/median",
        element_count=max(r.element_count for r in rows),
        max_value=max(r.max_value for r in rows),
        path=paths.pop() if len(paths) == 1 else "mixed",
        wall_time_ns=int(statistics.median(times)),
        checksum=sum(r.checksum for r in rows) if rows[0].element_count == 1 else rows[0].checksum,
    )


def scalar_suite(repeats=5, seed=42, bits=SCALAR_BITS):
    rng = random.Random(seed)
    for k in bits:
        for kind in SCALAR_KINDS:
            label = f"scalar/{k}bit/{kind}"
            rows = []
            for r in range(repeats):
                n = random_kbit(rng, k, kind)
                mask, elapsed = _timed(n)
                rows.append(BenchRecord(f"{label}/rep{r}", 1, n, str(mask.decision.kind), elapsed, mask.count()))
            yield from rows
            yield _median_row(label, rows)


def array_suite(repeats=5, seed=42, sizes=ARRAY_SIZES):
    # incrementing sequences need no randomness; seed kept for a uniform interface
    for n in sizes:
        values = np.arange(1, n + 1, dtype=np.uint64)
        for mode in ARRAY_MODES:
            label = f"array/1:{n}/{mode}"
            rows = []
            for r in range(repeats):
                mask, elapsed = _timed(values, mode)
                rows.append(BenchRecord(f"{label}/rep{r}", n, n, str(mask.decision.kind), elapsed, mask.count()))
            yield from rows
            yield _median_row(label, rows)


def crossover_suite(repeats=5, seed=42, counts=CROSSOVER_COUNTS, maxima=CROSSOVER_MAXIMA, model=None):
    """Time both array paths over an (element count, max value) grid.

    Each cell ends with a ``winner`` row (faster median) and a
    ``heuristic`` row (the path the model would pick).
    """
    model = model or HeuristicModel()
    gen = np.random.default_rng(seed)
    for count in counts:
        for top in maxima:
            values = gen.integers(1, top, size=count, endpoint=True, dtype=np.uint64)
            values[0] = top  # pin the max so cells are comparable
            cell = f"crossover/E={count}/M={top}"
            medians = {}
            for mode in ("sqrt", "binsearch"):
                rows = []
                for r in range(repeats):
                    mask, elapsed = _timed(values, mode)
                    rows.append(BenchRecord(f"{cell}/{mode}/rep{r}", count, top, str(mask.decision.kind), elapsed, mask.count()))
                yield from rows
                medians[mode] = _median_row(f"{cell}/{mode}", rows)
                yield medians[mode]
            winner = min(medians.values(), key=lambda rec: rec.wall_time_ns)
            yield BenchRecord(f"{cell}/winner", count, top, winner.path, winner.wall_time_ns, winner.checksum)
            pick = choose_array_path(count, top, model).kind
            chosen = medians["sqrt" if pick is PathKind.ARRAY_SQRT else "binsearch"]
            yield BenchRecord(f"{cell}/heuristic", count, top, str(pick), chosen.wall_time_ns, chosen.checksum)


SUITES = {
    "scalar": scalar_suite,
    "array": array_suite,
    "crossover": crossover_suite,
}


def run_suite(name, repeats=5, seed=42):
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
    return list(suite(repeats=repeats, seed=seed))

