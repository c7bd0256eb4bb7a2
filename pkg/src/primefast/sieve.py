"""Sieve of Eratosthenes tables and sorted-table membership."""

import math
import os
from dataclasses import dataclass

import numba as nb
import numpy as np

from .mask import PrimalityMask

DEFAULT_SIEVE_CEILING = 2**32
CEILING_ENV = "PRIMEFAST_SIEVE_CEILING"


class SieveLimitError(RuntimeError):
    """The requested sieve would exceed the configured memory ceiling."""

    def __init__(self, limit, ceiling):
        super().__init__(f"sieve limit {limit} exceeds the ceiling {ceiling} (set {CEILING_ENV} to raise it)")
        self.limit = limit
        self.ceiling = ceiling


def sieve_ceiling() -> int:
    """Ceiling from the environment, or the built-in default."""
    raw = os.environ.get(CEILING_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_SIEVE_CEILING
    value = int(raw, 0)
    if value < 0:
        raise ValueError(f"{CEILING_ENV} must be non-negative, got {raw!r}")
    return value


@dataclass(frozen=True, eq=False)
class PrimeTable:
    limit: int
    primes: np.ndarray

    def __post_init__(self):
        p = self.primes
        if p.size > 1 and not np.all(p[1:] > p[:-1]):
            raise AssertionError("prime table is not strictly increasing")
        if p.size and int(p[-1]) > self.limit:
            raise AssertionError("prime table runs past its limit")
        p.flags.writeable = False

    def __len__(self):
        return self.primes.size


@nb.njit("uint64[:](uint64)", cache=True)
def _odd_sieve(limit):
    # bit i of `composite` stands for the odd number 2*i + 3
    nodd = (limit - np.uint64(1)) // np.uint64(2)
    composite = np.zeros((nodd + np.uint64(7)) // np.uint64(8), dtype=np.uint8)
    i = np.uint64(0)
    while True:
        p = np.uint64(2) * i + np.uint64(3)
        if p * p > limit:
            break
        if not (composite[i >> np.uint64(3)] >> (i & np.uint64(7))) & np.uint8(1):
            j = (p * p - np.uint64(3)) // np.uint64(2)
            while j < nodd:
                composite[j >> np.uint64(3)] |= np.uint8(1) << (j & np.uint64(7))
                j += p
        i += np.uint64(1)

    count = np.uint64(1)
    for k in range(nodd):
        if not (composite[k >> 3] >> (k & 7)) & 1:
            count += np.uint64(1)
    primes = np.empty(count, dtype=np.uint64)
    primes[0] = 2
    n = 1
    for k in range(nodd):
        if not (composite[k >> 3] >> (k & 7)) & 1:
            primes[n] = 2 * k + 3
            n += 1
    return primes


def primes_up_to(limit: int, ceiling: int = None) -> PrimeTable:
    """All primes ``<= limit``.

    Raises :class:`SieveLimitError` if ``limit`` is above ``ceiling``
    (default: ``$PRIMEFAST_SIEVE_CEILING`` or ``2**32``).
    """
    limit = int(limit)
    if limit < 0:
        raise ValueError("limit must be non-negative")
    if ceiling is None:
        ceiling = sieve_ceiling()
    if limit > ceiling:
        raise SieveLimitError(limit, ceiling)
    if limit < 2:
        return PrimeTable(limit, np.empty(0, dtype=np.uint64))
    return PrimeTable(limit, _odd_sieve(limit))


def sorted_membership(values, table: PrimeTable) -> PrimalityMask:
    """Flag each value found in ``table`` by binary search."""
    values = np.asarray(values, dtype=np.uint64).reshape(-1)
    if values.size == 0:
        return PrimalityMask(np.zeros(0, dtype=np.bool_))
    top = int(values.max())
    if top > table.limit:
        raise ValueError(f"value {top} is above the table limit {table.limit}")
    primes = table.primes
    if primes.size == 0:
        return PrimalityMask(np.zeros(values.size, dtype=np.bool_))
    idx = np.searchsorted(primes, values)
    np.minimum(idx, primes.size - 1, out=idx)
    return PrimalityMask(primes[idx] == values)


def division_count(n: int) -> int:
    """Remainder operations a sieve-then-divide test spends on ``1..n``.

    Each element ``k`` is divided by every sieved prime below ``k``; the
    sieve covers primes up to ``isqrt(n)``.  A prime ``q`` is therefore
    used by the ``n - q`` elements above it.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    primes = primes_up_to(math.isqrt(n)).primes
    return len(primes) * n - int(primes.sum(dtype=np.uint64))
