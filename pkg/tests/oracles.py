"""Reference implementations used only by the tests.

None of these share code with the package: they use Python's unbounded
integers, so wide intermediates are fine here.
"""

import math

U64_MAX = 2**64 - 1

# first twelve primes: a deterministic witness set for n < 3.3e24,
# deliberately different from the package's set
_ORACLE_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def sieve_flags(limit):
    """bytearray where flags[k] == 1 iff k is prime, for 0 <= k < limit."""
    flags = bytearray([1]) * limit
    flags[:2] = b"\x00\x00"[: min(2, limit)]
    for p in range(2, math.isqrt(limit - 1) + 1 if limit > 1 else 0):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit, p)))
    return flags


def sieve_primes(limit):
    """Primes <= limit."""
    flags = sieve_flags(limit + 1)
    return [k for k in range(limit + 1) if flags[k]]


def trial_division(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def smallest_factor(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def wide_strong_probable_prime(n, a):
    a %= n
    if a == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def wide_miller_rabin(n):
    if n < 2:
        return False
    for p in _ORACLE_BASES:
        if n % p == 0:
            return n == p
    return all(wide_strong_probable_prime(n, a) for a in _ORACLE_BASES)


def literal_division_count(n):
    """Division count by the literal per-element loop."""
    p = sieve_primes(math.isqrt(n))
    return sum(sum(1 for q in p if q < k) for k in range(1, n + 1))
