from dataclasses import dataclass
from typing import Tuple

from analysis.crossings import line_crossings
from core.errors import HorizonError
from core.protocol import run_policy
from core.types import LossMatrix
from policies.cover import CoverState, cover_action, cover_split, rademacher_fn
from policies.ftl import FollowTheLeader
from sequences.embedding import binary_to_losses
from sequences.generators import BinarySequence
from smart.trace import ftl_trace


def verify_ftl_identity(losses: LossMatrix) -> float:
    """|direct FTL regret - Sigma_n|"""
    record = run_policy(FollowTheLeader(losses.m, losses.n), losses)
    return abs(record.regret - float(ftl_trace(losses)[-1]))


def ftl_regret_three_ways(y: BinarySequence) -> Tuple[float, float, float]:
    """(direct regret, trace value Sigma_n, c(y^{n-1}) / 2)"""
    losses = binary_to_losses(y)
    direct = run_policy(FollowTheLeader(2, y.n), losses).regret
    trace = float(ftl_trace(losses)[-1])
    return direct, trace, line_crossings(y.prefix(y.n - 1)) / 2.0


@dataclass
class CoverAchievability:
    n: int
    balance_gap: float
    stability_gap: float
    min_regret: float
    max_regret: float


def cover_achievability(n: int) -> CoverAchievability:
    """Walk every one of the 2^n sequences through the exact predictor.

    Balance: total loss equals min{sum y, n - sum y} + f_n. Stability: the two
    continuations of every prefix differ in potential by at most 1.
    """
    f_n = rademacher_fn(n)
    stats = {"balance": 0.0, "stability": 0.0, "low": float("inf"), "high": float("-inf")}

    def walk(t: int, ones: int, loss: float) -> None:
        if t > n:
            best = min(ones, n - ones)
            stats["balance"] = max(stats["balance"], abs(loss - (best + f_n)))
            stats["low"] = min(stats["low"], loss - best)
            stats["high"] = max(stats["high"], loss - best)
            return
        phi_zero, phi_one = cover_split(n, t, ones)
        stats["stability"] = max(stats["stability"], abs(phi_zero - phi_one))
        a = cover_action(CoverState(n=n, ones=ones, t=t))
        walk(t + 1, ones, loss + a)
        walk(t + 1, ones + 1, loss + (1.0 - a))

    if n < 1:
        raise HorizonError(f"enumeration needs n >= 1, got {n}")
    walk(1, 0, 0.0)
    return CoverAchievability(
        n=n,
        balance_gap=stats["balance"],
        stability_gap=stats["stability"],
        min_regret=stats["low"],
        max_regret=stats["high"],
    )
