from core.errors import (
    DimensionMismatchError,
    HorizonError,
    InvalidActionError,
    LossFileError,
    SmartError,
    ThresholdError,
    UsageError,
)
from core.protocol import PolicyState, best_fixed_loss, expected_round_loss, regret_decomposition, run_policy
from core.types import (
    ActionDistribution,
    CumulativeLoss,
    EpochRecord,
    LossMatrix,
    RunRecord,
    hindsight_optimum,
)

__all__ = [
    "ActionDistribution",
    "CumulativeLoss",
    "DimensionMismatchError",
    "EpochRecord",
    "HorizonError",
    "InvalidActionError",
    "LossFileError",
    "LossMatrix",
    "PolicyState",
    "RunRecord",
    "SmartError",
    "ThresholdError",
    "UsageError",
    "best_fixed_loss",
    "expected_round_loss",
    "hindsight_optimum",
    "regret_decomposition",
    "run_policy",
]
