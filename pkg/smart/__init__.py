from smart.agent import Phase, SmartConfig, draw_threshold, smart_run
from smart.randomized import randomized_regrets, switch_round
from smart.threshold import ThresholdMode, sample_threshold, sample_thresholds, threshold_cdf, threshold_rng
from smart.trace import RegretTrace, ftl_trace, trace_update

__all__ = [
    "Phase",
    "RegretTrace",
    "SmartConfig",
    "ThresholdMode",
    "draw_threshold",
    "ftl_trace",
    "randomized_regrets",
    "sample_threshold",
    "sample_thresholds",
    "smart_run",
    "switch_round",
    "threshold_cdf",
    "threshold_rng",
    "trace_update",
]
