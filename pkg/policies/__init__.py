from policies.cover import (
    CoverPolicy,
    CoverState,
    binomial_half_pmf,
    cover_action,
    cover_bound,
    cover_potential,
    cover_prediction,
    cover_split,
    rademacher_fn,
)
from policies.ftl import FollowTheLeader, ftl_action, leader_action
from policies.hedge import Hedge, LearningRateSchedule, hedge_action, hedge_worst_case_bound, tuned_learning_rate
from policies.registry import POLICY_FACTORIES, available_policies, get_factory

__all__ = [
    "CoverPolicy",
    "CoverState",
    "FollowTheLeader",
    "Hedge",
    "LearningRateSchedule",
    "POLICY_FACTORIES",
    "available_policies",
    "binomial_half_pmf",
    "cover_action",
    "cover_bound",
    "cover_potential",
    "cover_prediction",
    "cover_split",
    "ftl_action",
    "get_factory",
    "hedge_action",
    "hedge_worst_case_bound",
    "leader_action",
    "rademacher_fn",
    "tuned_learning_rate",
]
