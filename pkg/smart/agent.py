import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from core.errors import InvalidActionError, ThresholdError
from core.protocol import PolicyState, expected_round_loss
from core.types import ActionDistribution, LossMatrix, RunRecord
from policies.ftl import FollowTheLeader
from smart.threshold import ThresholdMode, sample_threshold, threshold_rng
from smart.trace import RegretTrace, trace_update

logger = logging.getLogger(__name__)


class Phase(Enum):
    FTL = "ftl"
    WORST_CASE = "worst_case"


@dataclass
class SmartConfig:
    """How SMART picks its threshold and what it switches to.

    `bound` maps a horizon to the worst-case regret g of the policy built by
    `worst_case_factory(horizon, m)`. Plugging a small-loss bound g(L*) in here
    gives the known-L* variant.
    """

    bound: Callable[[int], float]
    worst_case_factory: Callable[[int, int], PolicyState]
    mode: ThresholdMode = ThresholdMode.DETERMINISTIC
    seed: Optional[int] = None


def draw_threshold(cfg: SmartConfig, horizon: int) -> float:
    g_n = cfg.bound(horizon)
    if g_n < 0:
        raise ThresholdError(f"g({horizon}) = {g_n} is negative")
    if cfg.mode is ThresholdMode.DETERMINISTIC:
        return float(g_n)
    u = float(threshold_rng(cfg.seed).random())
    return sample_threshold(g_n, u)


def _checked(action: ActionDistribution, t: int, m: int, who: str) -> ActionDistribution:
    if not isinstance(action, ActionDistribution) or action.m != m:
        raise InvalidActionError(f"round {t}: {who} did not return a distribution over {m} experts")
    return action


def smart_run(losses: LossMatrix, cfg: SmartConfig, threshold: Optional[float] = None) -> RunRecord:
    """Play FTL while Sigma_{t-1} <= theta, then hand the rest of the horizon to a fresh worst-case policy.

    The trace keeps following FTL after the switch but no longer affects play.
    Passing `threshold` overrides the configured draw.
    """
    n, m = losses.n, losses.m
    theta = draw_threshold(cfg, n) if threshold is None else float(threshold)

    ftl = FollowTheLeader(m, n)
    trace = RegretTrace()
    phase = Phase.FTL
    worst_case: Optional[PolicyState] = None
    switch_times = []

    actions = np.empty((n, m))
    round_losses = np.empty(n)

    for t in range(1, n + 1):
        if phase is Phase.FTL and trace.current > theta:
            phase = Phase.WORST_CASE
            switch_times.append(t - 1)
            worst_case = cfg.worst_case_factory(n - (t - 1), m)
            logger.debug("switching to %s after round %d (trace %.4f > threshold %.4f)",
                         worst_case.name, t - 1, trace.current, theta)

        ftl_played = _checked(ftl.act(), t, m, ftl.name)
        if phase is Phase.FTL:
            action = ftl_played
        else:
            action = _checked(worst_case.act(), t, m, worst_case.name)

        row = losses.row(t)
        actions[t - 1] = action.weights
        round_losses[t - 1] = expected_round_loss(action, row)

        ftl.observe(row)
        trace_update(trace, ftl.cumulative.totals, ftl_played)
        if worst_case is not None:
            worst_case.observe(row)

    _, best = ftl.cumulative.hindsight_optimum()
    total = float(np.sum(round_losses))
    return RunRecord(
        actions=actions,
        round_losses=round_losses,
        total_loss=total,
        regret=total - best,
        switch_times=switch_times,
        trace=trace.as_array(),
        threshold=theta,
        policy="smart",
    )
