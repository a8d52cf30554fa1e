import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from config import defaults
from core.protocol import PolicyState, expected_round_loss, run_policy
from core.types import EpochRecord, LossMatrix, RunRecord
from policies.ftl import FollowTheLeader
from policies.registry import make_hedge_small_loss
from smallloss.bounds import epoch_guess, small_loss_g
from smart.trace import RegretTrace, trace_update

logger = logging.getLogger(__name__)


@dataclass
class SmallLossConfig:
    worst_case_factory: Callable[[int, int], PolicyState] = make_hedge_small_loss
    kappa: float = defaults.kappa


class EpochState:
    """Bookkeeping for one guess L*_z = 2^z ln m"""

    def __init__(self, index: int, start: int, m: int, kappa: float):
        guess = epoch_guess(index, m)
        self.record = EpochRecord(index=index, start=start, guess=guess, bound=small_loss_g(guess, m, kappa))
        self.worst_case: Optional[PolicyState] = None
        self.incurred_loss = 0.0

    @property
    def switched(self) -> bool:
        return self.record.switch is not None

    def budget(self, sigma: float) -> float:
        """L*_z + 2 min{Sigma_{t_z:t}, g(L*_z)} + 1"""
        return self.record.guess + 2.0 * min(sigma, self.record.bound) + 1.0

    def close(self, end: int, sigma: float) -> EpochRecord:
        self.record.end = end
        self.record.trace = sigma
        self.record.incurred_loss = self.incurred_loss
        return self.record


def small_loss_smart_run(losses: LossMatrix, cfg: Optional[SmallLossConfig] = None) -> RunRecord:
    """SMART with a doubling guess for L*.

    Each epoch plays FTL until the trace accumulated since the epoch start exceeds
    g(L*_z), then a fresh worst-case policy that only sees rounds after the switch.
    The epoch closes once its incurred loss exceeds L*_z + 2 min{Sigma, g(L*_z)} + 1.
    """
    cfg = cfg or SmallLossConfig()
    n, m = losses.n, losses.m

    ftl = FollowTheLeader(m, n)
    trace = RegretTrace()
    epoch = EpochState(0, 1, m, cfg.kappa)
    epochs: List[EpochRecord] = []

    actions = np.empty((n, m))
    round_losses = np.empty(n)

    for t in range(1, n + 1):
        ftl_played = ftl.act()
        action = ftl_played if epoch.worst_case is None else epoch.worst_case.act()

        row = losses.row(t)
        actions[t - 1] = action.weights
        round_losses[t - 1] = expected_round_loss(action, row)
        epoch.incurred_loss += round_losses[t - 1]

        ftl.observe(row)
        trace_update(trace, ftl.cumulative.totals, ftl_played)
        if epoch.worst_case is not None:
            epoch.worst_case.observe(row)

        sigma = trace.since(epoch.record.start - 1)
        if not epoch.switched and sigma > epoch.record.bound:
            epoch.record.switch = t
            epoch.record.trace_before_switch = trace.values[t - 1] - trace.values[epoch.record.start - 1]
            if t < n:
                epoch.worst_case = cfg.worst_case_factory(n - t, m)
            logger.debug("epoch %d switches after round %d", epoch.record.index, t)

        if epoch.switched and epoch.incurred_loss > epoch.budget(sigma) and t < n:
            epochs.append(epoch.close(t, sigma))
            epoch = EpochState(epoch.record.index + 1, t + 1, m, cfg.kappa)
            logger.debug("opening epoch %d at round %d (guess %.3f)", epoch.record.index, t + 1, epoch.record.guess)

    epochs.append(epoch.close(n, trace.since(epoch.record.start - 1)))

    _, best = ftl.cumulative.hindsight_optimum()
    total = float(np.sum(round_losses))
    return RunRecord(
        actions=actions,
        round_losses=round_losses,
        total_loss=total,
        regret=total - best,
        switch_times=[e.switch for e in epochs if e.switch is not None],
        trace=trace.as_array(),
        epochs=epochs,
        policy="smart_small_loss",
    )


def epoch_decomposition(
    losses: LossMatrix,
    record: RunRecord,
    factory: Callable[[int, int], PolicyState] = make_hedge_small_loss,
) -> float:
    """Sum over epochs of Sigma_{t_z:tau_z-1} + Reg(worst-case policy on rounds tau_z+1..end_z) + 1.

    The worst-case terms come from fresh re-runs on the epoch's post-switch window;
    an epoch that never switched contributes its whole trace.
    """
    total = 0.0
    for epoch in record.epochs:
        if epoch.switch is None:
            total += epoch.trace + 1.0
            continue
        replay = 0.0
        if epoch.switch < epoch.end:
            window = losses.window(epoch.switch, epoch.end)
            replay = run_policy(factory(losses.n - epoch.switch, losses.m), window).regret
        total += epoch.trace_before_switch + replay + 1.0
    return total
