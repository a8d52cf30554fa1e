import math

import numpy as np
from pydantic import BaseModel

from analysis.crossings import pnk_vector
from core.errors import HorizonError


class BracketReport(BaseModel):
    n: int
    c: float
    k_max: int
    lower: float
    upper: float
    min_ratio: float
    max_ratio: float
    passed: bool


def gaussian_profile(n: int, k: np.ndarray) -> np.ndarray:
    """sqrt(2 / (n pi)) e^{-k^2 / 2n}"""
    return math.sqrt(2.0 / (n * math.pi)) * np.exp(-np.square(k) / (2.0 * n))


def pnk_bound_check(n: int, c: float) -> BracketReport:
    """Check e^{-16C^3/sqrt n} <= p_{n,k} / profile <= sqrt((1 - C/sqrt n)/(1 - 2C/sqrt n)) e^{16C^3/sqrt n} for k <= C sqrt n"""
    if c <= 0 or n % 2 or n < 32 * c * c:
        raise HorizonError(f"bracket needs even n >= 32 C^2 and C > 0, got n={n}, C={c}")
    root = math.sqrt(n)
    k_max = int(math.floor(c * root))
    k = np.arange(k_max + 1, dtype=np.float64)
    ratios = pnk_vector(n, k_max) / gaussian_profile(n, k)

    drift = 16.0 * c ** 3 / root
    lower = math.exp(-drift)
    upper = math.sqrt((1.0 - c / root) / (1.0 - 2.0 * c / root)) * math.exp(drift)
    lo, hi = float(ratios.min()), float(ratios.max())
    return BracketReport(
        n=n, c=c, k_max=k_max, lower=lower, upper=upper,
        min_ratio=lo, max_ratio=hi, passed=lower <= lo and hi <= upper,
    )
