from typing import List

import numpy as np

from core.types import ActionDistribution, CumulativeLoss, LossMatrix
from policies.ftl import leader_action


class RegretTrace:
    """Anytime FTL regret Sigma_t, one value per observed round (Sigma_0 = 0)"""

    def __init__(self):
        self.values: List[float] = [0.0]

    @property
    def t(self) -> int:
        return len(self.values) - 1

    @property
    def current(self) -> float:
        return self.values[-1]

    def since(self, start: int) -> float:
        """Sigma_{start+1:t}, the part of the trace accumulated after round `start`"""
        return self.values[-1] - self.values[start]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values[1:], dtype=np.float64)


def trace_update(trace: RegretTrace, totals: np.ndarray, played: ActionDistribution) -> float:
    """Sigma_t = Sigma_{t-1} + L_t(a*_{t-1}) - L_t(a*_t).

    `totals` is L_t after row t was added and `played` the FTL action of round t,
    i.e. uniform over the leaders of L_{t-1}.
    """
    increment = played.value(totals) - float(totals.min())
    trace.values.append(trace.current + increment)
    return trace.current


def ftl_trace(losses: LossMatrix) -> np.ndarray:
    """Sigma_1..Sigma_n from scratch; the value at t only reads rows 1..t"""
    cumulative = CumulativeLoss(losses.m)
    trace = RegretTrace()
    for row in losses.entries:
        played = leader_action(cumulative)
        cumulative.add(row)
        trace_update(trace, cumulative.totals, played)
    return trace.as_array()
