"""Deterministic Miller-Rabin for every unsigned 64-bit integer."""

from typing import NamedTuple

import numba as nb
import numpy as np

from .modmath import U64_MAX, _mod_exp, _mod_mul

# Witness set that is exact for all n < 2**64.
SPRP_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_BASES = np.array(SPRP_BASES, dtype=np.uint64)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_THREE = np.uint64(3)


class Decomposition(NamedTuple):
    """``n - 1 == 2**s * d`` with ``d`` odd."""

    s: int
    d: int


@nb.njit("UniTuple(uint64, 2)(uint64)", cache=True, nogil=True)
def _decompose(n):
    d = n - _ONE
    s = _ZERO
    while (d & _ONE) == _ZERO:
        d >>= _ONE
        s += _ONE
    return s, d


@nb.njit("boolean(uint64, uint64, uint64, uint64)", cache=True, nogil=True)
def _sprp(n, base, s, d):
    a = base % n
    if a == _ZERO:
        return True
    minus_one = n - _ONE
    x = _mod_exp(a, d, n)
    if x == _ONE or x == minus_one:
        return True
    r = _ONE
    while r < s:
        x = _mod_mul(x, x, n)
        if x == minus_one:
            return True
        if x == _ONE:
            # 1 reached without passing through -1
            return False
        r += _ONE
    return False


@nb.njit("boolean(uint64)", cache=True, nogil=True)
def _is_prime_u64(n):
    if n < _TWO:
        return False
    if n == _TWO or n == _THREE:
        return True
    if (n & _ONE) == _ZERO:
        return False
    s, d = _decompose(n)
    for i in range(_BASES.shape[0]):
        if not _sprp(n, _BASES[i], s, d):
            return False
    return True


@nb.njit("void(uint64[:], boolean[:])", cache=True, nogil=True)
def _is_prime_u64_into(values, out):
    for i in range(values.shape[0]):
        out[i] = _is_prime_u64(values[i])


def _check_odd(n):
    if not 0 <= n <= U64_MAX:
        raise ValueError(f"n={n} is outside the unsigned 64-bit range")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")


def decompose(n: int) -> Decomposition:
    """Split ``n - 1`` into ``2**s * d`` for odd ``n >= 3``."""
    _check_odd(n)
    s, d = _decompose(n)
    return Decomposition(int(s), int(d))


def strong_probable_prime(n: int, base: int) -> bool:
    """True if ``n`` passes the strong Fermat test to ``base``.

    The base is reduced mod ``n`` first; a base that reduces to 0 carries
    no information and is counted as a pass.
    """
    _check_odd(n)
    if not 0 <= base <= U64_MAX:
        raise ValueError(f"base={base} is outside the unsigned 64-bit range")
    s, d = _decompose(n)
    return bool(_sprp(n, base, s, d))


def is_prime_u64(n: int) -> bool:
    """Exact primality for ``0 <= n < 2**64``."""
    if not 0 <= n <= U64_MAX:
        raise ValueError(f"n={n} is outside the unsigned 64-bit range")
    return bool(_is_prime_u64(n))


def is_prime_u64_many(values) -> np.ndarray:
    """Vectorised :func:`is_prime_u64` over a 1-d uint64 array."""
    values = np.ascontiguousarray(values, dtype=np.uint64)
    out = np.empty(values.shape[0], dtype=np.bool_)
    _is_prime_u64_into(values, out)
    return out
