"""Wheel sieves and trial division for small and medium scalars."""

import math
from dataclasses import dataclass
from itertools import accumulate, cycle, takewhile

import numba as nb
import numpy as np

WHEEL_PRIMES = (2, 3, 5, 7)

SMALL_LIMIT = 2**18
MEDIUM_LIMIT = 2**49


@dataclass(frozen=True)
class WheelSpec:
    basis: tuple
    diffs: tuple
    cycle_length: int

    def __post_init__(self):
        if sum(self.diffs) != self.cycle_length:
            raise ValueError("wheel gaps must sum to the cycle length")
        if math.prod(self.basis) != self.cycle_length:
            raise ValueError("cycle length must be the product of the basis")


def build_wheel(basis) -> WheelSpec:
    """Build the gap cycle of the wheel that skips multiples of ``basis``.

    ``basis`` must be a non-empty prefix of ``(2, 3, 5, 7)``.
    """
    basis = tuple(int(p) for p in basis)
    if not basis or basis != WHEEL_PRIMES[: len(basis)]:
        raise ValueError(f"unsupported wheel basis {basis}; use a prefix of {WHEEL_PRIMES}")
    length = math.prod(basis)
    coprime = [k for k in range(1, length + 1) if all(k % p for p in basis)]
    coprime.append(1 + length)
    diffs = tuple(b - a for a, b in zip(coprime, coprime[1:]))
    return WheelSpec(basis, diffs, length)


WHEEL_2 = build_wheel((2,))
WHEEL_2357 = build_wheel(WHEEL_PRIMES)


def wheel_divisors(spec: WheelSpec, limit: int) -> list:
    """All wheel elements in ``(1, limit]``, in increasing order."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    elements = accumulate(cycle(spec.diffs), initial=1)
    next(elements)  # the leading 1 divides everything
    return list(takewhile(lambda w: w <= limit, elements))


_ZERO = np.uint64(0)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_THREE = np.uint64(3)
_DIFFS_2357 = np.array(WHEEL_2357.diffs, dtype=np.uint64)
_BASIS_2357 = np.array(WHEEL_PRIMES, dtype=np.uint64)


@nb.njit("uint64(uint64)", cache=True, nogil=True)
def _isqrt(n):
    # float estimate, then exact integer correction
    r = np.uint64(np.sqrt(np.float64(n)))
    while r > _ZERO and r > n // r:
        r -= _ONE
    while (r + _ONE) <= n // (r + _ONE):
        r += _ONE
    return r


@nb.njit("boolean(uint64)", cache=True, nogil=True)
def _trial_division_small(n):
    if n < _TWO:
        return False
    if n == _TWO:
        return True
    if (n & _ONE) == _ZERO:
        return False
    root = _isqrt(n)
    d = _THREE
    while d <= root:
        if n % d == _ZERO:
            return False
        d += _TWO
    return True


@nb.njit("boolean(uint64)", cache=True, nogil=True)
def _trial_division_medium(n):
    for i in range(_BASIS_2357.shape[0]):
        if n % _BASIS_2357[i] == _ZERO:
            return False
    root = _isqrt(n)
    # walk the 2/3/5/7 wheel one gap at a time; nothing is materialised
    w = _ONE
    k = 0
    ncycle = _DIFFS_2357.shape[0]
    while True:
        w += _DIFFS_2357[k]
        if w > root:
            return True
        if n % w == _ZERO:
            return False
        k += 1
        if k == ncycle:
            k = 0


def trial_division_small(n: int) -> bool:
    """Primality of ``2 <= n < 2**18`` by division with odd numbers."""
    return bool(_trial_division_small(n))


def trial_division_medium(n: int) -> bool:
    """Primality of ``2**18 <= n < 2**49`` by division with the 2/3/5/7 wheel.

    The range guard belongs to the caller.  Below the range the raw rule
    is not a primality test (it rejects 2, 3, 5 and 7 themselves).
    """
    return bool(_trial_division_medium(n))
