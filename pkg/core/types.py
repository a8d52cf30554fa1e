from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import defaults
from core.errors import DimensionMismatchError, InvalidActionError


@dataclass(frozen=True, eq=False)
class LossMatrix:
    """n rounds x m experts of per-round losses in [0, 1]"""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.float64)
        if entries.ndim != 2:
            raise DimensionMismatchError(f"loss matrix must be 2-d, got shape {entries.shape}")
        if entries.shape[0] < 1:
            raise DimensionMismatchError("loss matrix needs at least one round")
        if entries.shape[1] < 2:
            raise DimensionMismatchError(f"loss matrix needs at least two experts, got {entries.shape[1]}")
        if not np.all(np.isfinite(entries)) or entries.min() < 0.0 or entries.max() > 1.0:
            raise ValueError("loss entries must lie in [0, 1]")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "LossMatrix":
        return cls(np.asarray(rows, dtype=np.float64))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    def row(self, t: int) -> np.ndarray:
        """Loss vector of round t (1-based)"""
        return self.entries[t - 1]

    def window(self, start: int, stop: int) -> "LossMatrix":
        """Rounds start+1 .. stop as a fresh instance"""
        return LossMatrix(self.entries[start:stop])

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class ActionDistribution:
    """A point on the probability simplex over m experts"""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.float64)
        if weights.ndim != 1 or weights.size < 2:
            raise InvalidActionError(f"action must be a vector of at least 2 weights, got shape {weights.shape}")
        if not np.all(np.isfinite(weights)):
            raise InvalidActionError("action weights must be finite")
        if weights.min() < 0.0 or weights.max() > 1.0:
            raise InvalidActionError(f"action weights must lie in [0, 1], got {weights.tolist()}")
        total = float(weights.sum())
        if abs(total - 1.0) > defaults.simplex_tolerance:
            raise InvalidActionError(f"action weights sum to {total!r}, not 1")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, m: int) -> "ActionDistribution":
        return cls(np.full(m, 1.0 / m))

    @classmethod
    def uniform_over(cls, m: int, indices: Sequence[int]) -> "ActionDistribution":
        weights = np.zeros(m)
        weights[list(indices)] = 1.0 / len(indices)
        return cls(weights)

    @classmethod
    def point_mass(cls, m: int, index: int) -> "ActionDistribution":
        return cls.uniform_over(m, [index])

    @classmethod
    def binary(cls, prob_one: float) -> "ActionDistribution":
        """(weight on "predict 0", weight on "predict 1")"""
        return cls(np.array([1.0 - prob_one, prob_one]))

    @property
    def m(self) -> int:
        return self.weights.size

    def value(self, vector: np.ndarray) -> float:
        """Linear loss a^T v"""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != self.weights.shape:
            raise DimensionMismatchError(
                f"action has {self.weights.size} weights but loss vector has shape {vector.shape}"
            )
        return float(np.dot(self.weights, vector))


class CumulativeLoss:
    """Running per-expert totals L_t, accumulated one row at a time"""

    def __init__(self, m: int):
        self.totals = np.zeros(m)
        self.t = 0

    @property
    def m(self) -> int:
        return self.totals.size

    def add(self, row: np.ndarray) -> None:
        row = np.asarray(row, dtype=np.float64)
        if row.shape != self.totals.shape:
            raise DimensionMismatchError(f"expected {self.m} losses, got shape {row.shape}")
        self.totals = self.totals + row
        self.t += 1

    def hindsight_optimum(self) -> Tuple[List[int], float]:
        return hindsight_optimum(self)

    def copy(self) -> "CumulativeLoss":
        other = CumulativeLoss(self.m)
        other.totals = self.totals.copy()
        other.t = self.t
        return other


def hindsight_optimum(cumulative: CumulativeLoss) -> Tuple[List[int], float]:
    """All experts attaining min_j L_{t,j}, and the minimum.

    Ties use exact float equality; every caller accumulates rows in round order,
    so symmetric inputs tie bit-for-bit.
    """
    totals = cumulative.totals
    best = totals.min()
    return np.flatnonzero(totals == best).tolist(), float(best)


@dataclass
class EpochRecord:
    index: int
    start: int
    guess: float
    bound: float
    switch: Optional[int] = None
    end: int = 0
    trace_before_switch: float = 0.0
    trace: float = 0.0
    incurred_loss: float = 0.0


@dataclass
class RunRecord:
    actions: np.ndarray
    round_losses: np.ndarray
    total_loss: float
    regret: float
    switch_times: List[int] = field(default_factory=list)
    trace: Optional[np.ndarray] = None
    threshold: Optional[float] = None
    epochs: List[EpochRecord] = field(default_factory=list)
    policy: str = ""

    @property
    def n(self) -> int:
        return int(self.round_losses.size)

    @property
    def last_ftl_round(self) -> int:
        return self.switch_times[0] if self.switch_times else self.n
