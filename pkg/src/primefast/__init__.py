"""Fast exact primality testing for unsigned 64-bit integers."""

from .dispatch import (
    Config,
    HeuristicModel,
    InputDomainError,
    PathDecision,
    PathKind,
    classify,
    is_prime,
    shrink,
    validate,
)
from .mask import PrimalityMask
from .millerrabin import SPRP_BASES, decompose, is_prime_u64, strong_probable_prime
from .modmath import mod_add, mod_exp, mod_mul
from .sieve import PrimeTable, SieveLimitError, division_count, primes_up_to, sorted_membership
from .wheel import WheelSpec, build_wheel, trial_division_medium, trial_division_small, wheel_divisors

__all__ = [
    "Config",
    "HeuristicModel",
    "InputDomainError",
    "PathDecision",
    "PathKind",
    "PrimalityMask",
    "PrimeTable",
    "SPRP_BASES",
    "SieveLimitError",
    "WheelSpec",
    "build_wheel",
    "classify",
    "decompose",
    "division_count",
    "is_prime",
    "is_prime_u64",
    "mod_add",
    "mod_exp",
    "mod_mul",
    "primes_up_to",
    "shrink",
    "sorted_membership",
    "strong_probable_prime",
    "trial_division_medium",
    "trial_division_small",
    "validate",
    "wheel_divisors",
]
