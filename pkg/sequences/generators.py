import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from config import defaults
from core.errors import HorizonError
from core.types import LossMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BinarySequence:
    """Bits y_1..y_n in {0, 1}"""

    bits: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.bits).ravel()
        if not np.all((raw == 0) | (raw == 1)):
            raise ValueError("binary sequence entries must be 0 or 1")
        bits = raw.astype(np.int8)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, text: str) -> "BinarySequence":
        return cls(np.array([int(ch) for ch in text], dtype=np.int8))

    @property
    def n(self) -> int:
        return self.bits.size

    @property
    def ones(self) -> int:
        return int(self.bits.sum())

    def prefix(self, t: int) -> "BinarySequence":
        return BinarySequence(self.bits[:t])

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BinarySequence) and np.array_equal(self.bits, other.bits)


def gen_bernoulli(n: int, p: float, seed: Optional[int] = None) -> BinarySequence:
    """n i.i.d. Bernoulli(p) bits from a PCG64 stream seeded with `seed`"""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise HorizonError(f"sequence length must be >= 0, got {n}")
    bits = (np.random.default_rng(seed).random(n) < p).astype(np.int8)
    if n > 0:
        band = defaults.bernoulli_flag_sigmas * math.sqrt(p * (1.0 - p) / n)
        mean = float(bits.mean())
        if abs(mean - p) > band:
            logger.warning("bernoulli(%.3f) seed %s: empirical mean %.4f is outside the %.0f-sigma band",
                           p, seed, mean, defaults.bernoulli_flag_sigmas)
    return BinarySequence(bits)


def gen_lead_change(n: int, c: int) -> BinarySequence:
    """c pairs (0, 1) followed by n - 2c ones; the walk crosses zero at j = 0, 2, ..., 2c"""
    if c < 0 or 2 * c > n:
        raise HorizonError(f"lead-change sequence needs 0 <= 2c <= n, got n={n}, c={c}")
    bits = np.ones(n, dtype=np.int8)
    bits[0:2 * c:2] = 0
    return BinarySequence(bits)


def gen_alternating(n: int) -> BinarySequence:
    """(1, 0, 1, 0, ...)"""
    return BinarySequence((np.arange(n) % 2 == 0).astype(np.int8))


def gen_random_losses(n: int, m: int, seed: Optional[int] = None) -> LossMatrix:
    return LossMatrix(np.random.default_rng(seed).random((n, m)))


def bits_from(values: Sequence[int]) -> BinarySequence:
    return BinarySequence(np.asarray(values, dtype=np.int8))
