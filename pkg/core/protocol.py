import logging
from abc import ABC, abstractmethod
from typing import List, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatchError, InvalidActionError
from core.types import ActionDistribution, CumulativeLoss, LossMatrix, RunRecord, hindsight_optimum

logger = logging.getLogger(__name__)


class PolicyState(ABC):
    """An online policy: act() for round t, then observe() the revealed loss row."""

    name: str = "policy"

    def __init__(self, m: int, horizon: int = 0):
        self.m = m
        self.horizon = horizon

    @abstractmethod
    def act(self) -> ActionDistribution:
        ...

    @abstractmethod
    def observe(self, row: np.ndarray) -> None:
        ...


def expected_round_loss(action: ActionDistribution, row: Sequence[float]) -> float:
    """l_t(a) = a^T l_t"""
    return action.value(np.asarray(row, dtype=np.float64))


def best_fixed_loss(losses: LossMatrix) -> Tuple[List[int], float]:
    cumulative = CumulativeLoss(losses.m)
    for row in losses.entries:
        cumulative.add(row)
    return hindsight_optimum(cumulative)


def run_policy(policy: PolicyState, losses: LossMatrix) -> RunRecord:
    """Play the protocol: the action for round t is fixed before row t is revealed."""
    if policy.m != losses.m:
        raise DimensionMismatchError(f"policy plays over {policy.m} experts, instance has {losses.m}")

    actions = np.empty((losses.n, losses.m))
    round_losses = np.empty(losses.n)
    cumulative = CumulativeLoss(losses.m)

    for t in range(1, losses.n + 1):
        try:
            action = policy.act()
        except InvalidActionError as exc:
            raise InvalidActionError(f"round {t}: {exc}") from exc
        if not isinstance(action, ActionDistribution) or action.m != losses.m:
            raise InvalidActionError(f"round {t}: {policy.name} did not return a distribution over {losses.m} experts")

        row = losses.row(t)
        actions[t - 1] = action.weights
        round_losses[t - 1] = expected_round_loss(action, row)
        policy.observe(row)
        cumulative.add(row)

    _, best = hindsight_optimum(cumulative)
    total = float(np.sum(round_losses))
    return RunRecord(
        actions=actions,
        round_losses=round_losses,
        total_loss=total,
        regret=total - best,
        policy=policy.name,
    )


def regret_decomposition(losses: LossMatrix, actions: np.ndarray) -> float:
    """Sum_t (L_t(a_t) - L_t(a_{t+1})) with a_{n+1} := a*_n.

    Equals the direct regret of any action sequence.
    """
    actions = np.asarray(actions, dtype=np.float64)
    if actions.shape != losses.entries.shape:
        raise DimensionMismatchError(f"expected actions of shape {losses.entries.shape}, got {actions.shape}")

    cumulative = np.cumsum(losses.entries, axis=0)
    final = cumulative[-1]
    terminal = np.zeros(losses.m)
    terminal[np.flatnonzero(final == final.min())] = 1.0
    terminal /= terminal.sum()
    following = np.vstack([actions[1:], terminal])

    return float(np.sum(np.einsum("ij,ij->i", actions - following, cumulative)))
