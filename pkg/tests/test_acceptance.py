"""Exit criteria for the package.

Each test records one PASS/FAIL line; the lines are printed together in
the terminal summary (see conftest.py).
"""

import math
import random
import statistics
import time

import numpy as np
import pytest

from oracles import sieve_flags, smallest_factor, wide_miller_rabin
from primefast import PathKind, build_wheel, classify, division_count, is_prime, is_prime_u64
from primefast.cli import main
from primefast.dispatch import choose_array_path, HeuristicModel
from primefast.modmath import U64_MAX, mod_add_many, mod_exp_many, mod_mul_many

P64 = 18446744073709551557

RESULTS = []


def record(criterion, ok, detail=""):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, detail


def test_ac01_exhaustive_small_domain():
    flags = sieve_flags(2**20)
    start = time.perf_counter()
    mismatches = [x for x in range(2**20) if is_prime(x)[0] != bool(flags[x])]
    elapsed = time.perf_counter() - start
    record("AC1 is_prime == sieve on [0, 2^20), < 30 s",
           not mismatches and elapsed < 30,
           f"{len(mismatches)} mismatches in {elapsed:.1f} s")


def test_ac02_division_counts():
    expect = {10: 15, 100: 383, 1000: 10840, 10**4: 248940, 10**5: 6490794,
              10**6: 167923873, 10**7: 4459357131, 10**8: 122894263604}
    start = time.perf_counter()
    got = {n: division_count(n) for n in expect}
    elapsed = time.perf_counter() - start
    bad = {n: v for n, v in got.items() if v != expect[n]}
    record("AC2 division counts for 1:N, N = 10 .. 10^8, < 10 s",
           not bad and elapsed < 10, f"mismatches={bad} in {elapsed:.2f} s")


def test_ac03_wheel_cycles():
    gaps_210 = [10, 2, 4, 2, 4, 6, 2, 6, 4, 2, 4, 6, 6, 2, 6, 4, 2, 6, 4, 6, 8, 4, 2, 4,
           2, 4, 8, 6, 4, 6, 2, 4, 6, 2, 6, 6, 4, 2, 4, 6, 2, 6, 4, 2, 4, 2, 10, 2]
    w = build_wheel([2, 3, 5, 7])
    ok = (list(w.diffs) == gaps_210 and len(w.diffs) == 48 and sum(w.diffs) == 210
          and list(build_wheel([2, 3]).diffs) == [4, 2]
          and list(build_wheel([2, 3, 5]).diffs) == [6, 4, 2, 4, 2, 4, 6, 2])
    record("AC3 wheel difference cycles", ok, f"2/3/5/7 cycle has {len(w.diffs)} gaps summing to {sum(w.diffs)}")


def test_ac04_miller_rabin_soundness():
    rng = random.Random(0xC0FFEE)
    samples = [rng.getrandbits(64) for _ in range(10_000)]
    mismatches = [n for n in samples if is_prime_u64(n) != wide_miller_rabin(n)]
    pseudoprimes = [2047, 3277, 4033, 4681, 8321, 3215031751]
    composite = all(1 < smallest_factor(n) < n for n in pseudoprimes)
    rejected = not any(is_prime_u64(n) for n in pseudoprimes)
    record("AC4 Miller-Rabin vs wide oracle, pseudoprimes rejected",
           not mismatches and composite and rejected,
           f"{len(mismatches)} mismatches / {len(samples)}; pseudoprimes composite={composite} rejected={rejected}")


def _median_call_ms(n, runs=25):
    times = []
    for _ in range(runs):
        start = time.perf_counter()
        result = is_prime_u64(n)
        times.append(time.perf_counter() - start)
    return result, statistics.median(times) * 1e3


def test_ac05_largest_prime():
    is_prime_u64(3)  # make sure compilation is not timed
    prime, t_prime = _median_call_ms(P64)
    comp, t_comp = _median_call_ms(P64 - 2)
    record("AC5 largest 64-bit prime, < 1 ms each",
           prime and not comp and t_prime < 1 and t_comp < 1,
           f"prime={prime} in {t_prime:.3f} ms, composite={not comp} in {t_comp:.3f} ms")


def test_ac06_path_equivalence():
    rng = np.random.default_rng(2024)
    differing = []
    for i in range(100):
        size = int(rng.integers(2, 10**5, endpoint=True))
        bits = int(rng.integers(8, 32, endpoint=True))
        values = rng.integers(0, 2**bits, size=size, endpoint=True, dtype=np.uint64)
        sq = is_prime(values, force_path="sqrt")
        bs = is_prime(values, force_path="binsearch")
        assert sq.decision.kind is PathKind.ARRAY_SQRT
        assert bs.decision.kind is PathKind.ARRAY_BINARY_SEARCH
        if sq != bs:
            differing.append(i)
    record("AC6 forced sqrt == forced binsearch on 100 arrays", not differing, f"differing arrays: {differing}")


def test_ac07_relative_performance():
    values = np.arange(1, 10**6 + 1, dtype=np.uint64)
    is_prime(values[:1000], force_path="sqrt")
    is_prime(values[:1000], force_path="binsearch")

    def timed(path):
        start = time.perf_counter()
        mask = is_prime(values, force_path=path)
        return time.perf_counter() - start, mask

    auto_runs = [timed("auto") for _ in range(5)]
    sqrt_runs = [timed("sqrt") for _ in range(5)]
    kind = auto_runs[0][1].decision.kind
    t_auto = statistics.median(t for t, _ in auto_runs)
    t_sqrt = statistics.median(t for t, _ in sqrt_runs)
    record("AC7 1:10^6 auto picks binary search and beats forced sqrt",
           kind is PathKind.ARRAY_BINARY_SEARCH and t_auto < t_sqrt,
           f"auto={kind} {t_auto * 1e3:.1f} ms vs sqrt {t_sqrt * 1e3:.1f} ms")


def test_ac08_routing_contract():
    model = HeuristicModel()
    checks = {
        "2^18-1": classify([2**18 - 1]).kind is PathKind.SMALL_SCALAR,
        "2^18": classify([2**18]).kind is PathKind.MEDIUM_SCALAR,
        "2^49-1": classify([2**49 - 1]).kind is PathKind.MEDIUM_SCALAR,
        "2^49": classify([2**49]).kind is PathKind.LARGE_SCALAR,
        "E=1000,M=1e9": choose_array_path(1000, 10**9, model).kind is PathKind.ARRAY_SQRT,
        "E=1e6,M=1e6": choose_array_path(10**6, 10**6, model).kind is PathKind.ARRAY_BINARY_SEARCH,
    }
    failed = [k for k, ok in checks.items() if not ok]
    record("AC8 routing boundaries and heuristic formulas", not failed, f"failed: {failed}")


def test_ac09_cli(capsys, tmp_path):
    results = {}
    results["check"] = main(["check", "1", "2", "3", "4", "5"]) == 0 and capsys.readouterr().out == "0 1 1 0 1\n"
    table = ("10,15,1.5\n100,383,3.8\n1000,10840,10.8\n10000,248940,24.8\n100000,6490794,64.9\n"
             "1000000,167923873,167.9\n10000000,4459357131,445.9\n100000000,122894263604,1228.9\n")
    results["divcount"] = main(["divcount", "--table"]) == 0 and capsys.readouterr().out == table
    results["exit2"] = main(["check", "2.5"]) == 2 and "2.5" in capsys.readouterr().err
    results["exit2_range"] = main(["check", "--range", "1:x"]) == 2
    results["exit3"] = main(["check", "--file", str(tmp_path / "absent")]) == 3
    results["exit2_divcount"] = main(["divcount", "--n", "0"]) == 2
    capsys.readouterr()
    failed = [k for k, ok in results.items() if not ok]
    record("AC9 CLI output and exit codes", not failed, f"failed: {failed}")


def _fuzz_triples(rng, count):
    # mix moduli of every size, with the extremes pinned
    bits = rng.integers(1, 64, size=count, endpoint=True)
    m = (rng.integers(0, 2**64 - 1, size=count, endpoint=True, dtype=np.uint64) >> (64 - bits).astype(np.uint64))
    m[m == 0] = 1
    m[:1000] = U64_MAX
    m[1000:2000] = P64
    a = rng.integers(0, 2**64 - 1, size=count, endpoint=True, dtype=np.uint64) % m
    b = rng.integers(0, 2**64 - 1, size=count, endpoint=True, dtype=np.uint64) % m
    a[2000:2500] = m[2000:2500] - np.uint64(1)
    b[2000:2500] = m[2000:2500] - np.uint64(1)
    return a, b, m


def test_ac10_overflow_totality():
    count = 10**6
    rng = np.random.default_rng(10)
    a, b, m = _fuzz_triples(rng, count)
    errors = []
    try:
        got_add = mod_add_many(a, b, m).tolist()
        got_mul = mod_mul_many(a, b, m).tolist()
        got_exp = mod_exp_many(a, b, m).tolist()
    except Exception as exc:  # any abort fails the criterion
        errors.append(repr(exc))
        got_add = got_mul = got_exp = []
    mismatches = 0
    if not errors:
        for i, (x, y, z) in enumerate(zip(a.tolist(), b.tolist(), m.tolist())):
            if got_add[i] != (x + y) % z or got_mul[i] != x * y % z or got_exp[i] != pow(x, y, z):
                mismatches += 1
    record("AC10 10^6 random triples through add/mul/exp vs wide oracle",
           not errors and mismatches == 0,
           f"{mismatches} mismatches, aborts={errors}")
