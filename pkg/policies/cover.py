import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.special import gammaln

from config import defaults
from core.errors import DimensionMismatchError, HorizonError
from core.protocol import PolicyState
from core.types import ActionDistribution

LN2 = math.log(2.0)


@lru_cache(maxsize=None)
def rademacher_fn(n: int) -> float:
    """f_n = E|Z_1 + ... + Z_n| / 2 for fair signs, i.e. 2^(-n-1) sum_k |2k - n| C(n, k)"""
    if n < 1:
        raise HorizonError(f"rademacher_fn needs n >= 1, got {n}")
    k = np.arange(n + 1, dtype=np.float64)
    distance = np.abs(2.0 * k - n)
    nonzero = distance > 0
    k, distance = k[nonzero], distance[nonzero]
    log_terms = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0) + np.log(distance) - (n + 1) * LN2
    return math.fsum(np.exp(log_terms))


def binomial_half_pmf(r: int) -> np.ndarray:
    """P[B = b], b = 0..r, for B ~ Binomial(r, 1/2)"""
    b = np.arange(r + 1, dtype=np.float64)
    return np.exp(gammaln(r + 1.0) - gammaln(b + 1.0) - gammaln(r - b + 1.0) - r * LN2)


def _expected_minority(n: int, ones: int, pmf: np.ndarray) -> float:
    """E[min(ones + B, n - ones - B)] under the given pmf of B"""
    totals = ones + np.arange(pmf.size)
    return float(np.dot(pmf, np.minimum(totals, n - totals)))


def cover_potential(n: int, t: int, ones: int) -> float:
    """phi_t after t observed bits containing `ones` ones, phi(y^n) = min{sum y, n - sum y} + f_n"""
    if not 0 <= t <= n:
        raise HorizonError(f"round {t} outside horizon {n}")
    return _expected_minority(n, ones, binomial_half_pmf(n - t)) + rademacher_fn(n)


@lru_cache(maxsize=65536)
def cover_split(n: int, t: int, ones: int) -> Tuple[float, float]:
    """(phi_t(y^{t-1} 0), phi_t(y^{t-1} 1)) for a prefix y^{t-1} with `ones` ones"""
    if not 1 <= t <= n:
        raise HorizonError(f"round {t} outside horizon {n}")
    pmf = binomial_half_pmf(n - t)
    f_n = rademacher_fn(n)
    return _expected_minority(n, ones, pmf) + f_n, _expected_minority(n, ones + 1, pmf) + f_n


def cover_prediction(n: int, t: int, ones: int) -> float:
    """a_t = (1 + phi_t(y^{t-1} 0) - phi_t(y^{t-1} 1)) / 2, the probability of predicting 1"""
    if not 1 <= t <= n:
        raise HorizonError(f"round {t} outside horizon {n}")
    pmf = binomial_half_pmf(n - t)
    gap = _expected_minority(n, ones, pmf) - _expected_minority(n, ones + 1, pmf)
    return min(1.0, max(0.0, (1.0 + gap) / 2.0))


def cover_bound(asymptotic: bool = False) -> Callable[[int], float]:
    """Worst-case regret g(n) of the predictor: exact f_n, or sqrt(n / 2 pi)"""
    if asymptotic:
        return lambda n: math.sqrt(n / (2.0 * math.pi))
    return lambda n: rademacher_fn(n) if n >= 1 else 0.0


@dataclass
class CoverState:
    n: int
    ones: int = 0
    t: int = 1


def cover_action(state: CoverState) -> float:
    if state.t > state.n:
        raise HorizonError(f"round {state.t} is past the horizon {state.n}")
    return cover_prediction(state.n, state.t, state.ones)


class CoverPolicy(PolicyState):
    """Minimax binary predictor over the two-expert embedding (row = (y, 1 - y))"""

    name = "cover"

    def __init__(self, m: int = 2, horizon: int = 0):
        if m != 2:
            raise DimensionMismatchError(f"the binary predictor needs m = 2 experts, got {m}")
        if not 1 <= horizon <= defaults.cover_max_horizon:
            raise HorizonError(f"exact predictor supports horizons 1..{defaults.cover_max_horizon}, got {horizon}")
        super().__init__(m, horizon)
        self.state = CoverState(n=horizon)

    def act(self) -> ActionDistribution:
        return ActionDistribution.binary(cover_action(self.state))

    def observe(self, row: np.ndarray) -> None:
        bit = row[0]
        if bit not in (0.0, 1.0) or row[1] != 1.0 - bit:
            raise ValueError(f"binary predictor expects rows (y, 1 - y) with y in {{0, 1}}, got {list(row)}")
        self.state.ones += int(bit)
        self.state.t += 1
