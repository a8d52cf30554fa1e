import math
from enum import Enum
from typing import Optional

import numpy as np

from core.protocol import PolicyState
from core.types import ActionDistribution, CumulativeLoss


class LearningRateSchedule(Enum):
    FIXED = "fixed"
    SMALL_LOSS = "small_loss"


def tuned_learning_rate(horizon: int, m: int) -> float:
    """eta = sqrt(8 ln m / n)"""
    return math.sqrt(8.0 * math.log(m) / max(horizon, 1))


def hedge_worst_case_bound(horizon: int, m: int) -> float:
    """Regret bound sqrt(n ln m / 2) of the horizon-tuned fixed rate"""
    return math.sqrt(max(horizon, 0) * math.log(m) / 2.0)


class Hedge(PolicyState):
    """Exponential weights over the experts' cumulative losses.

    FIXED uses one rate for the whole run (tuned to the horizon unless given).
    SMALL_LOSS is anytime: eta_t = sqrt(2 ln m / B_t) where B_t is the smallest
    guess ln m * 2^r (r >= 0) that covers the current best cumulative loss.
    """

    def __init__(
        self,
        m: int,
        horizon: int = 0,
        schedule: LearningRateSchedule = LearningRateSchedule.FIXED,
        eta: Optional[float] = None,
    ):
        super().__init__(m, horizon)
        if schedule is LearningRateSchedule.FIXED and eta is None:
            eta = tuned_learning_rate(horizon, m)
        if eta is not None and eta <= 0:
            raise ValueError(f"learning rate must be positive, got {eta}")
        self.schedule = schedule
        self.eta = eta
        self.cumulative = CumulativeLoss(m)
        self.name = "hedge" if schedule is LearningRateSchedule.FIXED else "hedge_small_loss"

    def loss_guess(self) -> float:
        log_m = math.log(self.m)
        best = float(self.cumulative.totals.min())
        guess = log_m
        while guess < best:
            guess *= 2.0
        return guess

    def current_eta(self) -> float:
        if self.schedule is LearningRateSchedule.FIXED:
            return self.eta
        return math.sqrt(2.0 * math.log(self.m) / self.loss_guess())

    def act(self) -> ActionDistribution:
        return hedge_action(self)

    def observe(self, row: np.ndarray) -> None:
        self.cumulative.add(row)


def hedge_action(state: Hedge) -> ActionDistribution:
    """w_j proportional to exp(-eta_t L_{t-1,j})"""
    totals = state.cumulative.totals
    logits = -state.current_eta() * (totals - totals.min())
    weights = np.exp(logits)
    weights /= weights.sum()
    return ActionDistribution(weights)
