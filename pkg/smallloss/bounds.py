import math
from typing import Iterable

from config import defaults
from core.protocol import best_fixed_loss, run_policy
from core.types import LossMatrix
from policies.hedge import Hedge, LearningRateSchedule


def small_loss_g(lstar: float, m: int, kappa: float = defaults.kappa) -> float:
    """g(L*) = 2 sqrt(2 L* ln m) + kappa ln m"""
    if lstar < 0 or m < 2 or kappa <= 0:
        raise ValueError(f"small_loss_g needs L* >= 0, m >= 2, kappa > 0; got {lstar}, {m}, {kappa}")
    log_m = math.log(m)
    return 2.0 * math.sqrt(2.0 * lstar * log_m) + kappa * log_m


def epoch_guess(z: int, m: int) -> float:
    """L*_z = 2^z ln m"""
    return math.ldexp(math.log(m), z)


def epoch_budget(lstar: float, m: int) -> int:
    """floor(log2(1 + L*/ln m)) + 1, the last epoch index the bound sums over"""
    return int(math.floor(math.log2(1.0 + lstar / math.log(m)))) + 1


def small_loss_regret_bound(
    reg_ftl: float,
    lstar: float,
    m: int,
    kappa: float = defaults.kappa,
    epochs: int = 1,
    slack: float = defaults.epoch_slack,
) -> float:
    """2 min{Reg(FTL), sum_{z <= Z} g(2^z ln m)} + 2 log2(1 + L*/ln m) + 2 + slack * epochs"""
    x = lstar / math.log(m)
    guarantee = math.fsum(small_loss_g(epoch_guess(z, m), m, kappa) for z in range(epoch_budget(lstar, m) + 1))
    return 2.0 * min(reg_ftl, guarantee) + 2.0 * math.log2(1.0 + x) + 2.0 + slack * epochs


def closed_form_bound(reg_ftl: float, lstar: float, m: int, constant: float = defaults.closed_form_constant) -> float:
    """2 min{Reg(FTL), 10 sqrt(2 L* ln m)} + C ln m (1 + log2(1 + L*/ln m))"""
    log_m = math.log(m)
    root = 10.0 * math.sqrt(2.0 * lstar * log_m)
    return 2.0 * min(reg_ftl, root) + constant * log_m * (1.0 + math.log2(1.0 + lstar / log_m))


def calibrate_kappa(instances: Iterable[LossMatrix]) -> float:
    """Smallest kappa >= 0 with Reg(small-loss Hedge) <= 2 sqrt(2 L* ln m) + kappa ln m on every instance.

    The schedule's play does not depend on kappa, so one run per instance suffices.
    """
    kappa = 0.0
    for losses in instances:
        record = run_policy(Hedge(losses.m, losses.n, LearningRateSchedule.SMALL_LOSS), losses)
        _, lstar = best_fixed_loss(losses)
        log_m = math.log(losses.m)
        needed = (record.regret - 2.0 * math.sqrt(2.0 * lstar * log_m)) / log_m
        kappa = max(kappa, needed)
    return kappa
