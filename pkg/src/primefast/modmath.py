"""Modular add / multiply / power over the full unsigned 64-bit range.

Every kernel here is compiled with numba on ``uint64`` values, so the
arithmetic really is 64-bit: a sum or product that does not fit wraps
around silently.  The kernels are written so that no intermediate value
ever needs more than 64 bits, which is what makes them correct for any
modulus up to ``2**64 - 1``.

The ``mod_*`` functions are the checked Python entry points.  The
underscored kernels are shared with the other compiled modules.
"""

import numba as nb
import numpy as np

U64_MAX = 2**64 - 1

_ZERO = np.uint64(0)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_U64_MAX = np.uint64(U64_MAX)
# largest value whose square still fits in 64 bits
_SQUARE_SAFE = np.uint64(2**32 - 1)


@nb.njit("uint64(uint64, uint64, uint64)", cache=True, nogil=True)
def _mod_add(a, b, m):
    if m == _ONE:
        return _ZERO
    # a + b >= m  <=>  a >= m - b, and m - b cannot underflow since b < m
    if a >= m - b:
        return a - (m - b)
    return a + b


@nb.njit("uint64(uint64, uint64, uint64)", cache=True, nogil=True)
def _mod_mul(a, b, m):
    if m == _ONE:
        return _ZERO

    # 1. the product fits
    if a == _ZERO or b <= _U64_MAX // a:
        return (a * b) % m

    # 2. squaring: a*a and (m-a)*(m-a) agree mod m, use the smaller root
    if a == b:
        small = min(a, m - a)
        if small <= _SQUARE_SAFE:
            return (small * small) % m

    # 3. doubling
    if a == _TWO:
        return _mod_add(b, b, m)

    # 4. shift-and-add; both the accumulate and the doubling go through
    # _mod_add so neither can overflow
    c = _ZERO
    while b > _ZERO:
        if b & _ONE:
            c = _mod_add(c, a, m)
        a = _mod_add(a, a, m)
        b >>= _ONE
    return c


@nb.njit("uint64(uint64, uint64, uint64)", cache=True, nogil=True)
def _mod_exp(a, e, m):
    if m == _ONE:
        return _ZERO
    base = a % m
    result = _ONE
    while e > _ZERO:
        if e & _ONE:
            result = _mod_mul(result, base, m)
        e >>= _ONE
        if e > _ZERO:
            base = _mod_mul(base, base, m)
    return result


@nb.vectorize(["uint64(uint64, uint64, uint64)"], cache=True)
def _mod_add_ufunc(a, b, m):
    return _mod_add(a, b, m)


@nb.vectorize(["uint64(uint64, uint64, uint64)"], cache=True)
def _mod_mul_ufunc(a, b, m):
    return _mod_mul(a, b, m)


@nb.vectorize(["uint64(uint64, uint64, uint64)"], cache=True)
def _mod_exp_ufunc(a, e, m):
    return _mod_exp(a, e, m)


def _check_u64(name, value):
    if not 0 <= value <= U64_MAX:
        raise ValueError(f"{name}={value} is outside the unsigned 64-bit range")


def _check_residues(a, b, m):
    _check_u64("m", m)
    if m < 1:
        raise ValueError("modulus must be at least 1")
    _check_u64("a", a)
    _check_u64("b", b)
    if a >= m or b >= m:
        raise ValueError(f"operands must be reduced below m={m}: a={a}, b={b}")


def mod_add(a: int, b: int, m: int) -> int:
    """Return ``(a + b) % m`` for reduced operands ``a, b < m``.

    Raises ``ValueError`` when an operand is not already reduced.
    """
    _check_residues(a, b, m)
    return int(_mod_add(a, b, m))


def mod_mul(a: int, b: int, m: int) -> int:
    """Return ``(a * b) % m`` for reduced operands ``a, b < m``.

    Dispatches between a direct product, a squaring shortcut, a doubling
    shortcut and an overflow-safe shift-and-add loop.
    """
    _check_residues(a, b, m)
    return int(_mod_mul(a, b, m))


def mod_exp(a: int, e: int, m: int) -> int:
    """Return ``a**e % m`` by square-and-multiply on top of :func:`mod_mul`."""
    _check_u64("m", m)
    if m < 1:
        raise ValueError("modulus must be at least 1")
    _check_u64("a", a)
    _check_u64("e", e)
    return int(_mod_exp(a, e, m))


def _as_u64_array(name, values):
    arr = np.asarray(values)
    if arr.dtype == np.uint64:
        return arr
    if arr.dtype.kind == "i" and (arr.size == 0 or arr.min() >= 0):
        return arr.astype(np.uint64)
    if arr.dtype == object:
        for v in arr.flat:
            _check_u64(name, int(v))
        return arr.astype(np.uint64)
    raise ValueError(f"{name} must hold unsigned 64-bit integers, got {arr.dtype}")


def _batch_args(a, b, m):
    a = _as_u64_array("a", a)
    b = _as_u64_array("b", b)
    m = _as_u64_array("m", m)
    if np.any(m == 0):
        raise ValueError("modulus must be at least 1")
    return a, b, m


def mod_add_many(a, b, m) -> np.ndarray:
    """Elementwise :func:`mod_add` over broadcastable uint64 arrays."""
    a, b, m = _batch_args(a, b, m)
    if np.any(a >= m) or np.any(b >= m):
        raise ValueError("operands must be reduced below the modulus")
    return _mod_add_ufunc(a, b, m)


def mod_mul_many(a, b, m) -> np.ndarray:
    """Elementwise :func:`mod_mul` over broadcastable uint64 arrays."""
    a, b, m = _batch_args(a, b, m)
    if np.any(a >= m) or np.any(b >= m):
        raise ValueError("operands must be reduced below the modulus")
    return _mod_mul_ufunc(a, b, m)


def mod_exp_many(a, e, m) -> np.ndarray:
    """Elementwise :func:`mod_exp` over broadcastable uint64 arrays."""
    a, e, m = _batch_args(a, e, m)
    return _mod_exp_ufunc(a, e, m)
