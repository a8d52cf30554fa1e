import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from analysis.asymptotics import pnk_bound_check
from analysis.checks import InvariantResult, SuiteReport, check_at_least, check_at_most
from analysis.crossings import (
    RATIONAL_MAX_N,
    crossing_distribution,
    histogram_agreement,
    line_crossings,
    pnk_exact,
    pnk_exact_rational,
    pnk_vector,
    sample_crossing_counts,
)
from analysis.identities import cover_achievability, ftl_regret_three_ways, verify_ftl_identity
from analysis.lower_bound import finite_n_ratio, lower_bound_constant
from config import defaults
from core.errors import UsageError
from core.protocol import best_fixed_loss, run_policy
from core.types import LossMatrix
from policies.cover import CoverPolicy, cover_bound, rademacher_fn
from policies.hedge import Hedge, LearningRateSchedule, hedge_worst_case_bound
from policies.registry import make_cover, make_hedge
from sequences.corpus import CorpusEntry, standard_corpus
from sequences.embedding import binary_to_losses
from sequences.generators import gen_bernoulli, gen_lead_change, gen_random_losses
from smallloss.bounds import calibrate_kappa, closed_form_bound, small_loss_g, small_loss_regret_bound
from smallloss.epochs import SmallLossConfig, epoch_decomposition, small_loss_smart_run
from smart.agent import SmartConfig, smart_run
from smart.randomized import randomized_regrets
from smart.threshold import ThresholdMode
from smart.trace import ftl_trace

logger = logging.getLogger(__name__)

IDENTITY_TOLERANCE = defaults.identity_tolerance
COMPETITIVE_RATIO = math.e / (math.e - 1.0)


class SuiteScale(BaseModel):
    """Instance counts and horizons for the verification suites"""

    horizon: int = 1000
    bernoulli_seeds: int = 10
    lead_changes: int = 100
    identity_instances: int = 100
    identity_horizon: int = 200
    binary_sequences: int = 1000
    binary_horizon: int = 500
    property_instances: int = 200
    randomized_sequences: int = 20
    threshold_draws: int = 10_000
    cover_max_n: int = defaults.cover_enumeration_max
    pnk_max_n: int = 2000
    bracket_horizons: List[int] = [4096, 16384]
    histogram_samples: int = defaults.histogram_samples
    histogram_horizon: int = defaults.histogram_horizon
    large_ratio_horizon: int = 1_000_000
    seed: int = defaults.seed


FULL = SuiteScale()
QUICK = SuiteScale(
    horizon=200,
    bernoulli_seeds=2,
    lead_changes=20,
    identity_instances=10,
    identity_horizon=50,
    binary_sequences=50,
    binary_horizon=100,
    property_instances=20,
    randomized_sequences=3,
    threshold_draws=300,
    cover_max_n=8,
    pnk_max_n=200,
    bracket_horizons=[4096],
    histogram_samples=20_000,
)


def _corpus(scale: SuiteScale) -> List[CorpusEntry]:
    return standard_corpus(
        n=scale.horizon,
        seeds=range(scale.bernoulli_seeds),
        c_values=range(1, scale.lead_changes + 1),
    )


def cover_smart_config(mode: ThresholdMode = ThresholdMode.DETERMINISTIC, seed: Optional[int] = None) -> SmartConfig:
    """SMART over the binary embedding with the exact predictor and theta = sqrt(n / 2 pi)"""
    return SmartConfig(bound=cover_bound(asymptotic=True), worst_case_factory=make_cover, mode=mode, seed=seed)


def run_identity_suite(scale: SuiteScale = FULL) -> SuiteReport:
    """FTL trace identities plus the SMART guarantees that rest on them"""
    rng = np.random.default_rng(scale.seed)
    results: List[InvariantResult] = []

    discrepancy = 0.0
    for i in range(scale.identity_instances):
        m = (2, 5, 10)[i % 3]
        losses = gen_random_losses(scale.identity_horizon, m, int(rng.integers(2**31)))
        discrepancy = max(discrepancy, verify_ftl_identity(losses))
    results.append(check_at_most("ftl_trace_identity_experts", discrepancy, IDENTITY_TOLERANCE))

    three_way = 0.0
    for _ in range(scale.binary_sequences):
        y = gen_bernoulli(scale.binary_horizon, 0.5, int(rng.integers(2**31)))
        direct, trace, crossings = ftl_regret_three_ways(y)
        three_way = max(three_way, abs(direct - crossings), abs(trace - crossings))
    results.append(check_at_most("ftl_regret_equals_half_crossings", three_way, IDENTITY_TOLERANCE))

    corpus = _corpus(scale)
    cfg = cover_smart_config()
    threshold_excess = -math.inf
    decomposition_gap = -math.inf
    tracking: Dict[float, List[float]] = {}
    for entry in corpus:
        losses = entry.losses
        g_n = cfg.bound(losses.n)
        reg_ftl = float(ftl_trace(losses)[-1])
        record = smart_run(losses, cfg)
        threshold_excess = max(threshold_excess, record.regret - (2.0 * min(reg_ftl, g_n) + 1.0))
        if record.switch_times:
            t_sw = record.switch_times[0]
            tail = run_policy(make_cover(losses.n - t_sw, losses.m), losses.window(t_sw, losses.n)).regret
            decomposition_gap = max(decomposition_gap, record.regret - (float(record.trace[t_sw - 1]) + tail))
        if entry.kind == "bernoulli" and entry.param <= 0.4:
            tracking.setdefault(entry.param, []).extend([record.regret, reg_ftl, g_n])
    results.append(check_at_most("deterministic_threshold_bound", threshold_excess, IDENTITY_TOLERANCE,
                                 f"{len(corpus)} corpus sequences"))
    if decomposition_gap > -math.inf:
        results.append(check_at_most("switch_decomposition", decomposition_gap, IDENTITY_TOLERANCE))

    tracking_excess = -math.inf
    for values in tracking.values():
        smart_mean = float(np.mean(values[0::3]))
        ftl_mean = float(np.mean(values[1::3]))
        if ftl_mean < values[2]:
            tracking_excess = max(tracking_excess, smart_mean - (2.0 * ftl_mean + 1.0))
    if tracking_excess > -math.inf:
        results.append(check_at_most("bernoulli_tracks_ftl", tracking_excess, 0.0))

    randomized_excess = -math.inf
    picks = np.linspace(0, len(corpus) - 1, min(scale.randomized_sequences, len(corpus))).astype(int)
    for index in picks:
        losses = corpus[index].losses
        g_n = cfg.bound(losses.n)
        reg_ftl = float(ftl_trace(losses)[-1])
        _, regrets = randomized_regrets(losses, cover_smart_config(ThresholdMode.RANDOMIZED), scale.threshold_draws,
                                        seed=scale.seed + int(index))
        sem = float(np.std(regrets, ddof=1)) / math.sqrt(regrets.size)
        bound = COMPETITIVE_RATIO * min(reg_ftl, g_n) + 1.0 + 3.0 * sem
        randomized_excess = max(randomized_excess, float(np.mean(regrets)) - bound)
    results.append(check_at_most("randomized_threshold_bound", randomized_excess, 0.0,
                                 f"{picks.size} sequences x {scale.threshold_draws} draws"))

    results.extend(_single_switch_and_adaptedness(scale, rng))
    return SuiteReport.from_results("identity", results)


def _single_switch_and_adaptedness(scale: SuiteScale, rng: np.random.Generator) -> List[InvariantResult]:
    most_switches = 0
    prefix_mismatches = 0
    for i in range(scale.property_instances):
        seed = int(rng.integers(2**31))
        mode = ThresholdMode.RANDOMIZED if i % 2 else ThresholdMode.DETERMINISTIC
        if i % 4 < 2:
            losses = binary_to_losses(gen_bernoulli(scale.identity_horizon, float(rng.uniform(0.3, 0.7)), seed))
            cfg = cover_smart_config(mode, seed)
        else:
            m = int(rng.integers(2, 6))
            losses = gen_random_losses(scale.identity_horizon, m, seed)
            # a deliberately small bound so that switches actually happen
            cfg = SmartConfig(bound=lambda h, m=m: 0.1 * hedge_worst_case_bound(h, m),
                              worst_case_factory=make_hedge, mode=mode, seed=seed)
        record = smart_run(losses, cfg)
        most_switches = max(most_switches, len(record.switch_times))
        t = int(rng.integers(1, losses.n + 1))
        if not np.array_equal(ftl_trace(losses.window(0, t)), record.trace[:t]):
            prefix_mismatches += 1
    return [
        check_at_most("single_switch", float(most_switches), 1.0),
        check_at_most("trace_adaptedness", float(prefix_mismatches), 0.0),
    ]


def run_cover_suite(scale: SuiteScale = FULL) -> SuiteReport:
    balance = stability = spread = distance = 0.0
    for n in range(1, scale.cover_max_n + 1):
        achieved = cover_achievability(n)
        balance = max(balance, achieved.balance_gap)
        stability = max(stability, achieved.stability_gap)
        spread = max(spread, achieved.max_regret - achieved.min_regret)
        distance = max(distance, abs(achieved.max_regret - rademacher_fn(n)))
    results = [
        check_at_most("balance", balance, IDENTITY_TOLERANCE, f"all sequences up to n={scale.cover_max_n}"),
        check_at_most("stability", stability, 1.0 + 1e-12),
        check_at_most("equalizer_spread", spread, IDENTITY_TOLERANCE),
        check_at_most("regret_equals_rademacher", distance, IDENTITY_TOLERANCE),
    ]

    rng = np.random.default_rng(scale.seed)
    f_n = rademacher_fn(scale.horizon)
    worst = 0.0
    for _ in range(5):
        losses = binary_to_losses(gen_bernoulli(scale.horizon, float(rng.uniform()), int(rng.integers(2**31))))
        worst = max(worst, abs(run_policy(CoverPolicy(2, scale.horizon), losses).regret - f_n))
    results.append(check_at_most("equalizer_at_horizon", worst, 1e-7, f"n={scale.horizon}"))

    large = 10_000
    relative = abs(rademacher_fn(large) / math.sqrt(large / (2.0 * math.pi)) - 1.0)
    results.append(check_at_most("rademacher_asymptotics", relative, 0.01, f"n={large}"))
    return SuiteReport.from_results("cover", results)


def run_crossings_suite(scale: SuiteScale = FULL) -> SuiteReport:
    normalization = max(abs(math.fsum(pnk_vector(n)) - 1.0) for n in range(2, scale.pnk_max_n + 1, 2))
    results = [check_at_most("pnk_normalization", normalization, IDENTITY_TOLERANCE, f"even n <= {scale.pnk_max_n}")]

    rational_gap = max(
        abs(pnk_exact(n, k) - float(pnk_exact_rational(n, k)))
        for n in range(2, RATIONAL_MAX_N + 1, 2)
        for k in range(n // 2 + 1)
    )
    results.append(check_at_most("pnk_matches_integer_arithmetic", rational_gap, 1e-12))

    for n in scale.bracket_horizons:
        report = pnk_bound_check(n, 2.0)
        results.append(check_at_least(f"bracket_lower_n{n}", report.min_ratio, report.lower))
        results.append(check_at_most(f"bracket_upper_n{n}", report.max_ratio, report.upper))

    n = scale.histogram_horizon
    histogram = sample_crossing_counts(n, scale.histogram_samples, scale.seed)
    worst_z = histogram_agreement(histogram, crossing_distribution(n), defaults.histogram_max_k)
    results.append(check_at_most("empirical_histogram", worst_z, defaults.histogram_sigmas,
                                 f"{scale.histogram_samples} walks, n={n}"))

    mismatches = 0
    for length in (10, 51, scale.horizon):
        for c in range(0, (length - 1) // 2 + 1):
            y = gen_lead_change(length, c)
            mismatches += line_crossings(y.prefix(length - 1)) != c + 1
    results.append(check_at_most("lead_change_crossings", float(mismatches), 0.0))
    return SuiteReport.from_results("crossings", results)


def run_lowerbound_suite(scale: SuiteScale = FULL) -> SuiteReport:
    report = lower_bound_constant()
    denominator = 1.0 - report.exp_component + 2.0 * report.q_component
    ratios = list(report.finite_n_ratios.values())
    results = [
        check_at_most("gamma_inf_reference", report.deviation, 5e-4, f"gamma_inf={report.gamma_inf:.6f}"),
        check_at_most("gamma_inf_definition", abs(report.gamma_inf * denominator - 1.0), 1e-12),
        check_at_most("finite_ratio_n2", abs(finite_n_ratio(2) - 1.2), 1e-12),
        check_at_most(
            "finite_ratio_large",
            abs(finite_n_ratio(scale.large_ratio_horizon) - report.gamma_inf),
            0.02,
            f"n={scale.large_ratio_horizon}",
        ),
        check_at_least("finite_ratios_at_least_one", min(ratios), 1.0),
    ]
    return SuiteReport.from_results("lowerbound", results)


def run_smallloss_suite(scale: SuiteScale = FULL) -> SuiteReport:
    kappa = defaults.kappa
    instances: List[LossMatrix] = [entry.losses for entry in _corpus(scale)]
    instances += [
        binary_to_losses(gen_bernoulli(scale.horizon, 0.1, scale.seed + i)) for i in range(scale.bernoulli_seeds)
    ]

    bound_excess = epoch_excess = decomposition_excess = closed_form_excess = hedge_excess = -math.inf
    switch_violations = 0
    for losses in instances:
        log_m = math.log(losses.m)
        _, lstar = best_fixed_loss(losses)
        reg_ftl = float(ftl_trace(losses)[-1])
        record = small_loss_smart_run(losses, SmallLossConfig(kappa=kappa))

        bound = small_loss_regret_bound(reg_ftl, lstar, losses.m, kappa, epochs=len(record.epochs))
        bound_excess = max(bound_excess, record.regret - bound)
        if lstar > log_m:
            epoch_excess = max(epoch_excess, (len(record.epochs) - 1) - (math.log2(lstar / log_m) + 1.0))
        decomposition_excess = max(decomposition_excess, record.regret - epoch_decomposition(losses, record))
        closed_form_excess = max(closed_form_excess, record.regret - closed_form_bound(reg_ftl, lstar, losses.m))

        for epoch in record.epochs:
            if epoch.switch is None:
                continue
            before = 0.0 if epoch.start == 1 else float(record.trace[epoch.start - 2])
            through = float(record.trace[epoch.switch - 1]) - before
            switch_violations += not (epoch.trace_before_switch <= epoch.bound < through)

        hedge = run_policy(Hedge(losses.m, losses.n, LearningRateSchedule.SMALL_LOSS), losses)
        hedge_excess = max(hedge_excess, hedge.regret - small_loss_g(lstar, losses.m, kappa))

    results = [
        check_at_most("explicit_small_loss_bound", bound_excess, IDENTITY_TOLERANCE, f"{len(instances)} instances"),
        check_at_most("epoch_switch_rule", float(switch_violations), 0.0),
        check_at_most("alternation_decomposition", decomposition_excess, IDENTITY_TOLERANCE),
        check_at_most("closed_form_bound", closed_form_excess, 0.0, f"C={defaults.closed_form_constant}"),
        check_at_most("hedge_small_loss_bound", hedge_excess, 0.0, f"kappa={kappa}"),
        check_at_most("calibrated_kappa", calibrate_kappa(instances), kappa),
    ]
    if epoch_excess > -math.inf:
        results.insert(1, check_at_most("epoch_count", epoch_excess, 0.0))
    return SuiteReport.from_results("smallloss", results)


SUITES: Dict[str, Callable[[SuiteScale], SuiteReport]] = {
    "identity": run_identity_suite,
    "cover": run_cover_suite,
    "crossings": run_crossings_suite,
    "lowerbound": run_lowerbound_suite,
    "smallloss": run_smallloss_suite,
}


def run_suites(name: str, scale: SuiteScale = FULL) -> List[SuiteReport]:
    if name == "all":
        return [suite(scale) for suite in SUITES.values()]
    if name not in SUITES:
        raise UsageError(f"unknown suite '{name}', expected one of {sorted(SUITES) + ['all']}")
    return [SUITES[name](scale)]
