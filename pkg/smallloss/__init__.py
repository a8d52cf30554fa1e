from smallloss.bounds import (
    calibrate_kappa,
    closed_form_bound,
    epoch_budget,
    epoch_guess,
    small_loss_g,
    small_loss_regret_bound,
)
from smallloss.epochs import EpochState, SmallLossConfig, epoch_decomposition, small_loss_smart_run

__all__ = [
    "EpochState",
    "SmallLossConfig",
    "calibrate_kappa",
    "closed_form_bound",
    "epoch_budget",
    "epoch_decomposition",
    "epoch_guess",
    "small_loss_g",
    "small_loss_regret_bound",
    "small_loss_smart_run",
]
