"""The ``is_prime`` front door: validation, shrinking and path selection."""

import enum
import math
import numbers
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numba as nb
import numpy as np

from .mask import PrimalityMask
from .millerrabin import _is_prime_u64, _is_prime_u64_into
from .modmath import U64_MAX
from .sieve import SieveLimitError, primes_up_to, sorted_membership
from .wheel import MEDIUM_LIMIT, SMALL_LIMIT, WHEEL_PRIMES, _trial_division_medium, _trial_division_small


class PathKind(str, enum.Enum):
    SMALL_SCALAR = "SmallScalar"
    MEDIUM_SCALAR = "MediumScalar"
    LARGE_SCALAR = "LargeScalar"
    ARRAY_SQRT = "ArraySqrt"
    ARRAY_BINARY_SEARCH = "ArrayBinarySearch"

    def __str__(self):
        return self.value


SCALAR_KINDS = frozenset({PathKind.SMALL_SCALAR, PathKind.MEDIUM_SCALAR, PathKind.LARGE_SCALAR})

# names accepted by ``force_path`` and the CLI
FORCE_NAMES = {
    "auto": None,
    "sqrt": PathKind.ARRAY_SQRT,
    "binsearch": PathKind.ARRAY_BINARY_SEARCH,
}


@dataclass(frozen=True)
class HeuristicModel:
    """Crossover lines between the sqrt and binary-search array paths.

    Below ``regime_split`` elements the small line applies, otherwise the
    large one.  A line value above the array's maximum favours binary
    search.
    """

    regime_split: int = 30_000
    small_slope: int = 275
    small_intercept: int = -100_000
    large_slope: int = 613
    large_intercept: int = -200_000_000

    def __post_init__(self):
        if self.small_slope <= 0 or self.large_slope <= 0:
            raise ValueError("heuristic slopes must be positive")
        if self.regime_split < 1:
            raise ValueError("regime_split must be at least 1")

    def threshold(self, element_count: int) -> tuple:
        """Return ``(regime, value)`` of the crossover line at ``element_count``."""
        if element_count < self.regime_split:
            return "small", self.small_slope * element_count + self.small_intercept
        return "large", self.large_slope * element_count + self.large_intercept


@dataclass(frozen=True)
class PathDecision:
    kind: PathKind
    rationale: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Config:
    model: HeuristicModel = HeuristicModel()
    sieve_ceiling: int = None  # None: environment or built-in default
    parallel: bool = False
    workers: int = None


class InputDomainError(ValueError):
    """An input element is not a non-negative 64-bit integer."""

    def __init__(self, index, value, reason):
        super().__init__(f"element {index} ({value!r}) {reason}")
        self.index = index
        self.value = value
        self.reason = reason


def _check_element(i, x):
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, numbers.Real):
        raise InputDomainError(i, x, "is not numeric")
    if isinstance(x, numbers.Integral):
        x = int(x)
    else:
        x = float(x)
        if not math.isfinite(x) or not x.is_integer():
            raise InputDomainError(i, x, "is not an integer")
        x = int(x)
    if x < 0:
        raise InputDomainError(i, x, "is negative")
    if x > U64_MAX:
        raise InputDomainError(i, x, "does not fit in 64 bits")
    return x


def _first(mask):
    return int(np.flatnonzero(mask)[0])


def _validate(values):
    """Return ``(flat uint64 array, shape)``."""
    if type(values) is int and 0 <= values <= U64_MAX:
        return np.array([values], dtype=np.uint64), ()
    if isinstance(values, (numbers.Number, np.generic)) and not isinstance(values, np.ndarray):
        return np.array([_check_element(0, values)], dtype=np.uint64), ()

    arr = None
    if isinstance(values, np.ndarray):
        arr = values
    else:
        try:
            arr = np.asarray(values)
        except (ValueError, OverflowError):
            arr = None
        # a float array built from Python ints may already have lost digits,
        # and a string array has already rewritten the numbers
        if arr is not None and arr.dtype.kind not in "ui":
            arr = None
        if arr is None:
            arr = np.asarray(values, dtype=object)
    shape = arr.shape
    flat = arr.reshape(-1)
    kind = flat.dtype.kind

    if kind == "u":
        return flat.astype(np.uint64, copy=False), shape
    if kind == "i":
        neg = flat < 0
        if neg.any():
            i = _first(neg)
            raise InputDomainError(i, int(flat[i]), "is negative")
        return flat.astype(np.uint64), shape
    if kind == "f":
        bad = ~np.isfinite(flat)
        if bad.any():
            i = _first(bad)
            raise InputDomainError(i, float(flat[i]), "is not an integer")
        frac = flat != np.floor(flat)
        if frac.any():
            i = _first(frac)
            raise InputDomainError(i, float(flat[i]), "is not an integer")
        neg = flat < 0
        if neg.any():
            i = _first(neg)
            raise InputDomainError(i, float(flat[i]), "is negative")
        big = flat >= 2.0**64
        if big.any():
            i = _first(big)
            raise InputDomainError(i, float(flat[i]), "does not fit in 64 bits")
        return flat.astype(np.uint64), shape
    # object arrays, and strings or bools: find the first bad element
    out = np.empty(flat.size, dtype=np.uint64)
    for i, x in enumerate(flat.tolist() if kind != "O" else flat):
        out[i] = _check_element(i, x)
    return out, shape


def validate(values) -> np.ndarray:
    """Check and convert input to a flat ``uint64`` array, preserving order.

    Accepts Python ints, integral floats, numpy arrays and nested lists.
    Raises :class:`InputDomainError` naming the first bad element.
    """
    return _validate(values)[0]


class Shrunk(NamedTuple):
    survivors: np.ndarray
    positions: np.ndarray
    resolved: np.ndarray  # primality for every non-survivor position


def shrink(values) -> Shrunk:
    """Resolve 0, 1 and everything with a factor in 2, 3, 5, 7.

    2, 3, 5 and 7 resolve as prime, the rest of that group as composite.
    Whatever is left is returned with its original positions.
    """
    v = np.asarray(values, dtype=np.uint64).reshape(-1)
    small_prime = np.zeros(v.size, dtype=np.bool_)
    has_factor = np.zeros(v.size, dtype=np.bool_)
    for p in WHEEL_PRIMES:
        small_prime |= v == p
        has_factor |= v % np.uint64(p) == 0
    alive = ~has_factor & (v > 1)
    positions = np.flatnonzero(alive)
    return Shrunk(v[positions], positions, small_prime)


def scalar_kind(n: int) -> PathKind:
    if n < SMALL_LIMIT:
        return PathKind.SMALL_SCALAR
    if n < MEDIUM_LIMIT:
        return PathKind.MEDIUM_SCALAR
    return PathKind.LARGE_SCALAR


def choose_array_path(element_count: int, max_value: int, model: HeuristicModel) -> PathDecision:
    regime, line = model.threshold(element_count)
    # at or below the max the sqrt path is the safe default
    kind = PathKind.ARRAY_SQRT if line <= max_value else PathKind.ARRAY_BINARY_SEARCH
    return PathDecision(kind, {
        "element_count": element_count,
        "max_value": max_value,
        "regime": regime,
        "threshold": line,
    })


def classify(values, model: HeuristicModel = None) -> PathDecision:
    """Pick the evaluation strategy for already validated ``values``.

    One element selects a scalar route by magnitude.  Longer inputs are
    judged on their total element count and the largest value that still
    needs an array path after shrinking.
    """
    model = model or HeuristicModel()
    v = np.asarray(values, dtype=np.uint64).reshape(-1)
    if v.size == 0:
        raise ValueError("cannot classify an empty input")
    if v.size == 1:
        n = int(v[0])
        return PathDecision(scalar_kind(n), {"element_count": 1, "max_value": n})
    survivors = shrink(v).survivors
    survivors = survivors[survivors < MEDIUM_LIMIT]
    top = int(survivors.max()) if survivors.size else 0
    decision = choose_array_path(v.size, top, model)
    decision.rationale["survivor_count"] = int(survivors.size)
    return decision


_ZERO = np.uint64(0)
_ONE = np.uint64(1)


@nb.njit(cache=True, nogil=True)
def _trial_divide_into(values, primes, out):
    for i in range(values.shape[0]):
        v = values[i]
        prime = v > _ONE
        for j in range(primes.shape[0]):
            p = primes[j]
            if p * p > v:
                break
            if v % p == _ZERO:
                prime = False
                break
        out[i] = prime


def _run_chunked(kernel, values, extra, config):
    out = np.empty(values.size, dtype=np.bool_)
    workers = config.workers or os.cpu_count() or 1
    if not config.parallel or workers < 2 or values.size < 4 * workers:
        kernel(values, *extra, out)
        return out
    bounds = np.linspace(0, values.size, workers + 1).astype(np.intp)
    with ThreadPoolExecutor(workers) as pool:
        jobs = [pool.submit(kernel, values[a:b], *extra, out[a:b]) for a, b in zip(bounds, bounds[1:])]
        for job in jobs:
            job.result()
    return out


def _sqrt_path(values, top, config):
    primes = primes_up_to(math.isqrt(top), config.sieve_ceiling).primes
    return _run_chunked(_trial_divide_into, values, (primes,), config)


def _binsearch_path(values, top, config):
    table = primes_up_to(top, config.sieve_ceiling)
    return sorted_membership(values, table).bits


def _is_prime_scalar(n):
    kind = scalar_kind(n)
    if kind is PathKind.SMALL_SCALAR:
        result = _trial_division_small(n)
    elif kind is PathKind.MEDIUM_SCALAR:
        result = _trial_division_medium(n)
    else:
        result = _is_prime_u64(n)
    return bool(result), PathDecision(kind, {"element_count": 1, "max_value": n})


def _parse_force(force_path):
    if force_path is None or isinstance(force_path, PathKind):
        kind = force_path
    else:
        try:
            kind = FORCE_NAMES[force_path]
        except KeyError:
            kind = PathKind(force_path)
    if kind is not None and kind not in (PathKind.ARRAY_SQRT, PathKind.ARRAY_BINARY_SEARCH):
        raise ValueError(f"only array paths can be forced, got {force_path!r}")
    return kind


def is_prime(values, config: Config = None, force_path=None) -> PrimalityMask:
    """Primality of every element of ``values``.

    ``values`` may be a scalar, a sequence, a nested list or a numpy array
    of non-negative integers below ``2**64``.  ``force_path`` ("sqrt",
    "binsearch" or "auto") overrides the heuristic for multi-element
    inputs; it never changes the result.
    """
    config = config or Config()
    forced = _parse_force(force_path)
    flat, shape = _validate(values)

    if flat.size == 0:
        return PrimalityMask(flat.astype(np.bool_), shape)
    if flat.size == 1:
        result, decision = _is_prime_scalar(int(flat[0]))
        return PrimalityMask(np.array([result]), shape, decision)

    bits = np.zeros(flat.size, dtype=np.bool_)
    survivors, positions, resolved = shrink(flat)
    bits[:] = resolved

    large = survivors >= MEDIUM_LIMIT
    if large.any():
        bits[positions[large]] = _run_chunked(_is_prime_u64_into, survivors[large], (), config)

    rest, rest_pos = survivors[~large], positions[~large]
    top = int(rest.max()) if rest.size else 0
    decision = choose_array_path(flat.size, top, config.model)
    rationale = decision.rationale
    rationale.update(survivor_count=int(rest.size), large_count=int(np.count_nonzero(large)))
    kind = decision.kind
    if forced is not None:
        kind = forced
        rationale["forced"] = True

    if rest.size:
        if kind is PathKind.ARRAY_BINARY_SEARCH:
            try:
                bits[rest_pos] = _binsearch_path(rest, top, config)
            except SieveLimitError as exc:
                kind = PathKind.ARRAY_SQRT
                rationale["fallback"] = str(exc)
        if kind is PathKind.ARRAY_SQRT:
            bits[rest_pos] = _sqrt_path(rest, top, config)

    return PrimalityMask(bits, shape, PathDecision(kind, rationale))
