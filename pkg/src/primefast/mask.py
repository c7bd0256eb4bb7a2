import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class PrimalityMask:
    """Per-element primality flags, in input order.

    ``bits`` is always flat; ``shape`` records the layout of the original
    input so :meth:`array` can hand it back.  ``decision`` is filled in by
    :func:`primefast.is_prime` with the route the input took.
    """

    bits: np.ndarray
    shape: tuple = None
    decision: object = field(default=None, repr=False)

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=np.bool_).reshape(-1)
        if self.shape is None:
            self.shape = (self.bits.size,)
        if math.prod(self.shape) != self.bits.size:
            raise ValueError(f"shape {self.shape} does not match {self.bits.size} flags")

    def __len__(self):
        return self.bits.size

    def __iter__(self):
        return iter(self.bits.tolist())

    def __getitem__(self, i):
        return bool(self.bits[i])

    def __eq__(self, other):
        if isinstance(other, PrimalityMask):
            return self.shape == other.shape and np.array_equal(self.bits, other.bits)
        return NotImplemented

    def array(self) -> np.ndarray:
        return self.bits.reshape(self.shape)

    def tolist(self) -> list:
        return self.bits.tolist()

    def count(self) -> int:
        return int(np.count_nonzero(self.bits))
