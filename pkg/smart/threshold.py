import math
from enum import Enum
from typing import Optional

import numpy as np

from core.errors import ThresholdError

E_MINUS_ONE = math.e - 1.0
# Spawn key that separates threshold draws from sequence streams built on the same seed
THRESHOLD_STREAM = 1


class ThresholdMode(Enum):
    DETERMINISTIC = "deterministic"
    RANDOMIZED = "randomized"


def sample_threshold(g_n: float, u: float) -> float:
    """theta = g_n ln(1 + (e - 1) U), the inverse of threshold_cdf"""
    if g_n < 0 or not math.isfinite(g_n):
        raise ThresholdError(f"worst-case bound must be finite and >= 0, got {g_n}")
    if not 0.0 <= u <= 1.0:
        raise ThresholdError(f"uniform draw must lie in [0, 1], got {u}")
    return min(g_n, g_n * math.log1p(E_MINUS_ONE * u))


def threshold_cdf(x: float, g_n: float) -> float:
    """F(x) = (e^{x/g_n} - 1)/(e - 1) on [0, g_n]"""
    if g_n < 0:
        raise ThresholdError(f"worst-case bound must be >= 0, got {g_n}")
    if x < 0:
        return 0.0
    if x >= g_n:
        return 1.0
    return math.expm1(x / g_n) / E_MINUS_ONE


def threshold_rng(seed: Optional[int]) -> np.random.Generator:
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(THRESHOLD_STREAM,)))


def sample_thresholds(g_n: float, draws: int, seed: Optional[int]) -> np.ndarray:
    """`draws` thresholds from one PCG64 stream; the first equals draw_threshold's"""
    if g_n < 0:
        raise ThresholdError(f"worst-case bound must be >= 0, got {g_n}")
    uniforms = threshold_rng(seed).random(draws)
    return np.minimum(g_n, g_n * np.log1p(E_MINUS_ONE * uniforms))
