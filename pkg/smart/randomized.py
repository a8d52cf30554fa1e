import logging
from typing import Dict, Optional, Tuple

import numpy as np

from core.types import LossMatrix
from smart.agent import SmartConfig, smart_run
from smart.threshold import sample_thresholds
from smart.trace import ftl_trace

logger = logging.getLogger(__name__)


def switch_round(trace: np.ndarray, theta: float) -> int:
    """t_sw = min{t : Sigma_t > theta}, or n when that round leaves nothing to switch for"""
    n = trace.size
    # first index above theta is unchanged by taking the running maximum
    first_above = int(np.searchsorted(np.maximum.accumulate(trace), theta, side="right"))
    return min(first_above + 1, n)


def randomized_regrets(
    losses: LossMatrix, cfg: SmartConfig, draws: int, seed: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Regret of randomized-threshold SMART for each of `draws` thresholds.

    A run depends on theta only through t_sw, so one run per distinct t_sw is played
    and shared by every draw that lands on it.
    """
    thresholds = sample_thresholds(cfg.bound(losses.n), draws, cfg.seed if seed is None else seed)
    trace = ftl_trace(losses)

    by_switch: Dict[int, float] = {}
    regrets = np.empty(draws)
    for i, theta in enumerate(thresholds):
        t_sw = switch_round(trace, theta)
        if t_sw not in by_switch:
            by_switch[t_sw] = smart_run(losses, cfg, threshold=float(theta)).regret
        regrets[i] = by_switch[t_sw]

    logger.debug("%d threshold draws collapsed to %d distinct runs", draws, len(by_switch))
    return thresholds, regrets
