import numpy as np

from core.protocol import PolicyState
from core.types import ActionDistribution, CumulativeLoss, hindsight_optimum


class FollowTheLeader(PolicyState):
    """Plays the uniform distribution over the current leaders"""

    name = "ftl"

    def __init__(self, m: int, horizon: int = 0):
        super().__init__(m, horizon)
        self.cumulative = CumulativeLoss(m)

    def act(self) -> ActionDistribution:
        return ftl_action(self)

    def observe(self, row: np.ndarray) -> None:
        self.cumulative.add(row)


def ftl_action(state: FollowTheLeader) -> ActionDistribution:
    return leader_action(state.cumulative)


def leader_action(cumulative: CumulativeLoss) -> ActionDistribution:
    """Uniform over argmin_j L_{t-1,j}; uniform over all experts at t = 1"""
    leaders, _ = hindsight_optimum(cumulative)
    return ActionDistribution.uniform_over(cumulative.m, leaders)
