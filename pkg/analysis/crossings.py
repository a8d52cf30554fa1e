import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import gammaln

from core.errors import HorizonError
from sequences.generators import BinarySequence

LN2 = math.log(2.0)
RATIONAL_MAX_N = 64


def _bits(y: Union[BinarySequence, Sequence[int], np.ndarray]) -> np.ndarray:
    return y.bits if isinstance(y, BinarySequence) else np.asarray(y, dtype=np.int64)


def line_crossings(y: Union[BinarySequence, Sequence[int], np.ndarray]) -> int:
    """Number of j in {0..t} with S_j = 2 sum_{i<=j} y_i - j = 0; the origin always counts"""
    walk = np.cumsum(2 * _bits(y).astype(np.int64) - 1)
    return 1 + int(np.count_nonzero(walk == 0))


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise HorizonError(f"crossing probabilities are defined for even n >= 2, got {n}")


def pnk_exact(n: int, k: int) -> float:
    """p_{n,k} = P[c(eps^n) = k + 1] = 2^{-(n-k)} C(n - k, n/2); zero once k > n/2"""
    _require_even(n)
    if k < 0:
        raise HorizonError(f"k must be >= 0, got {k}")
    half = n // 2
    if k > half:
        return 0.0
    return math.exp(gammaln(n - k + 1) - gammaln(half + 1) - gammaln(half - k + 1) - (n - k) * LN2)


def pnk_vector(n: int, k_max: Optional[int] = None) -> np.ndarray:
    """p_{n,0..k_max} in one vectorised pass (k_max defaults to n)"""
    _require_even(n)
    k_max = n if k_max is None else min(k_max, n)
    half = n // 2
    out = np.zeros(k_max + 1)
    k = np.arange(min(k_max, half) + 1, dtype=np.float64)
    out[: k.size] = np.exp(gammaln(n - k + 1) - gammaln(half + 1) - gammaln(half - k + 1) - (n - k) * LN2)
    return out


def pnk_exact_rational(n: int, k: int) -> Fraction:
    """Integer-arithmetic p_{n,k}, kept to small n as a cross-check of the log-gamma path"""
    _require_even(n)
    if n > RATIONAL_MAX_N:
        raise HorizonError(f"rational crossing probabilities are limited to n <= {RATIONAL_MAX_N}")
    if k < 0 or k > n // 2:
        return Fraction(0)
    return Fraction(math.comb(n - k, n // 2), 2 ** (n - k))


@dataclass(frozen=True, eq=False)
class CrossingDistribution:
    n: int
    probabilities: np.ndarray

    def __post_init__(self):
        probabilities = np.asarray(self.probabilities, dtype=np.float64)
        if probabilities.min() < 0.0:
            raise ValueError("crossing probabilities must be nonnegative")
        if abs(math.fsum(probabilities) - 1.0) > 1e-9:
            raise ValueError(f"crossing probabilities sum to {math.fsum(probabilities)!r}")
        probabilities.setflags(write=False)
        object.__setattr__(self, "probabilities", probabilities)

    def probability(self, k: int) -> float:
        return float(self.probabilities[k]) if 0 <= k <= self.n else 0.0

    def total(self) -> float:
        return math.fsum(self.probabilities)


def crossing_distribution(n: int) -> CrossingDistribution:
    return CrossingDistribution(n, pnk_vector(n))


def sample_crossing_counts(n: int, samples: int, seed: Optional[int] = None, chunk: int = 10_000) -> np.ndarray:
    """Histogram over k of returns to zero of S_1..S_n for `samples` fair +-1 walks"""
    rng = np.random.default_rng(seed)
    histogram = np.zeros(n + 1, dtype=np.int64)
    remaining = samples
    while remaining > 0:
        rows = min(chunk, remaining)
        steps = 2 * rng.integers(0, 2, size=(rows, n), dtype=np.int8).astype(np.int32) - 1
        zeros = np.count_nonzero(np.cumsum(steps, axis=1) == 0, axis=1)
        histogram += np.bincount(zeros, minlength=n + 1)
        remaining -= rows
    return histogram


def histogram_agreement(histogram: np.ndarray, distribution: CrossingDistribution, k_max: int) -> float:
    """Largest |observed - expected| / multinomial sd over k = 0..k_max"""
    total = int(histogram.sum())
    worst = 0.0
    for k in range(min(k_max, distribution.n) + 1):
        p = distribution.probability(k)
        expected = total * p
        sd = math.sqrt(total * p * (1.0 - p))
        observed = int(histogram[k])
        if sd == 0.0:
            if observed != expected:
                return math.inf
            continue
        worst = max(worst, abs(observed - expected) / sd)
    return worst
