import math

import numpy as np
import pytest

from core.errors import ThresholdError
from core.protocol import run_policy
from core.types import ActionDistribution, LossMatrix
from policies.cover import cover_bound
from policies.ftl import FollowTheLeader
from policies.hedge import hedge_worst_case_bound
from policies.registry import make_cover, make_hedge
from sequences.corpus import standard_corpus
from sequences.embedding import binary_to_losses
from sequences.generators import gen_bernoulli, gen_lead_change, gen_random_losses
from smart.agent import SmartConfig, draw_threshold, smart_run
from smart.randomized import randomized_regrets, switch_round
from smart.threshold import ThresholdMode, sample_threshold, sample_thresholds, threshold_cdf, threshold_rng
from smart.trace import RegretTrace, ftl_trace, trace_update


def cover_config(mode=ThresholdMode.DETERMINISTIC, seed=None):
    return SmartConfig(bound=cover_bound(asymptotic=True), worst_case_factory=make_cover, mode=mode, seed=seed)


def test_trace_on_alternating_bits(alternating_hundred):
    trace = ftl_trace(alternating_hundred)
    expected = [math.ceil(t / 2) / 2 for t in range(1, 101)]
    assert trace.tolist() == expected


def test_trace_on_all_ones(all_ones):
    assert set(ftl_trace(all_ones).tolist()) == {0.5}


def test_trace_is_monotone_on_experts(rng):
    trace = ftl_trace(gen_random_losses(300, 5, 7))
    assert np.all(np.diff(trace) >= -1e-12)
    assert trace[0] >= 0.0


def test_trace_update_increment():
    trace = RegretTrace()
    value = trace_update(trace, np.array([1.0, 0.0]), ActionDistribution.uniform(2))
    assert value == 0.5
    assert trace.t == 1
    assert trace.since(0) == 0.5


def test_trace_final_value_equals_ftl_regret(rng):
    losses = LossMatrix(rng.random((200, 10)))
    record = run_policy(FollowTheLeader(10, 200), losses)
    assert ftl_trace(losses)[-1] == pytest.approx(record.regret, abs=1e-9)


@pytest.mark.parametrize("u, expected", [(0.0, 0.0), (1.0, 2.5), (0.5, 2.5 * math.log(1 + (math.e - 1) / 2))])
def test_sample_threshold(u, expected):
    assert sample_threshold(2.5, u) == pytest.approx(expected, abs=1e-12)


def test_sample_threshold_half_draw_value():
    assert sample_threshold(1.0, 0.5) == pytest.approx(0.620, abs=1e-3)


@pytest.mark.parametrize("g_n, u", [(1.0, -0.1), (1.0, 1.5), (-1.0, 0.5)])
def test_sample_threshold_rejects_bad_input(g_n, u):
    with pytest.raises(ThresholdError):
        sample_threshold(g_n, u)


@pytest.mark.parametrize("u", [0.1, 0.37, 0.9])
def test_threshold_cdf_inverts_sampler(u):
    assert threshold_cdf(sample_threshold(3.0, u), 3.0) == pytest.approx(u, abs=1e-12)


def test_threshold_cdf_support():
    assert threshold_cdf(-1.0, 2.0) == 0.0
    assert threshold_cdf(2.0, 2.0) == 1.0


def test_draw_threshold_modes():
    deterministic = draw_threshold(cover_config(), 100)
    assert deterministic == pytest.approx(math.sqrt(100 / (2 * math.pi)))
    first = draw_threshold(cover_config(ThresholdMode.RANDOMIZED, seed=5), 100)
    assert first == draw_threshold(cover_config(ThresholdMode.RANDOMIZED, seed=5), 100)
    assert 0.0 <= first <= deterministic
    assert first == pytest.approx(sample_thresholds(deterministic, 3, 5)[0], abs=1e-12)


def test_threshold_draw_is_independent_of_sequence_seed():
    p, g_n = 0.3, 10.0
    agree = 0
    for seed in range(400):
        y_1 = gen_bernoulli(100, p, seed).bits[0]
        u = threshold_rng(seed).random()
        agree += int((u < p) == bool(y_1))
        assert sample_thresholds(g_n, 1, seed)[0] == pytest.approx(sample_threshold(g_n, u), abs=1e-12)
    # independent draws agree with probability p^2 + (1 - p)^2 = 0.58
    assert 180 < agree < 290


def test_all_ones_never_switches(all_ones):
    record = smart_run(all_ones, cover_config())
    assert record.switch_times == []
    assert record.last_ftl_round == all_ones.n
    assert record.regret == pytest.approx(0.5)


def test_alternating_switches_once_and_meets_bound(alternating_hundred):
    cfg = cover_config()
    theta = cfg.bound(100)
    record = smart_run(alternating_hundred, cfg)
    # Sigma_t = ceil(t/2)/2 first exceeds 3.99 at t = 15
    assert record.switch_times == [15]
    assert record.threshold == pytest.approx(theta)
    assert record.regret <= 2 * theta + 1


def test_switch_decomposition(alternating_hundred):
    record = smart_run(alternating_hundred, cover_config())
    t_sw = record.switch_times[0]
    tail = run_policy(make_cover(100 - t_sw, 2), alternating_hundred.window(t_sw, 100)).regret
    assert record.regret <= record.trace[t_sw - 1] + tail + 1e-9


def test_smart_matches_ftl_when_ftl_is_cheap():
    losses = binary_to_losses(gen_lead_change(100, 2))
    smart = smart_run(losses, cover_config())
    ftl = run_policy(FollowTheLeader(2, 100), losses)
    assert smart.switch_times == []
    assert np.array_equal(smart.actions, ftl.actions)
    assert smart.regret == ftl.regret == 1.5


def test_deterministic_bound_over_corpus():
    cfg = cover_config()
    for entry in standard_corpus(n=200, seeds=range(2), c_values=range(1, 21)):
        losses = entry.losses
        reg_ftl = ftl_trace(losses)[-1]
        record = smart_run(losses, cfg)
        assert record.regret <= 2 * min(reg_ftl, cfg.bound(200)) + 1 + 1e-9, entry.name


@pytest.mark.parametrize("mode", list(ThresholdMode))
def test_single_switch_and_adaptedness(mode, rng):
    for i in range(10):
        m = 2 + i % 3
        losses = gen_random_losses(80, m, i)
        cfg = SmartConfig(bound=lambda h, m=m: 0.1 * hedge_worst_case_bound(h, m), worst_case_factory=make_hedge,
                          mode=mode, seed=i)
        record = smart_run(losses, cfg)
        assert len(record.switch_times) <= 1
        t = int(rng.integers(1, 81))
        assert np.array_equal(ftl_trace(losses.window(0, t)), record.trace[:t])


def test_switch_round_lookup():
    trace = np.array([0.5, 0.5, 1.0, 1.0, 1.5])
    assert switch_round(trace, 0.7) == 3
    assert switch_round(trace, 0.4) == 1
    assert switch_round(trace, 1.2) == 5
    assert switch_round(trace, 2.0) == 5


def test_randomized_regrets_match_individual_runs():
    losses = binary_to_losses(gen_bernoulli(60, 0.5, 3))
    cfg = cover_config(ThresholdMode.RANDOMIZED)
    thresholds, regrets = randomized_regrets(losses, cfg, draws=25, seed=11)
    assert np.array_equal(thresholds, sample_thresholds(cfg.bound(60), 25, 11))
    for theta, regret in zip(thresholds, regrets):
        assert regret == smart_run(losses, cfg, threshold=theta).regret


def test_randomized_mean_meets_bound(alternating_hundred):
    cfg = cover_config(ThresholdMode.RANDOMIZED)
    _, regrets = randomized_regrets(alternating_hundred, cfg, draws=2000, seed=2)
    reg_ftl = ftl_trace(alternating_hundred)[-1]
    sem = regrets.std(ddof=1) / math.sqrt(regrets.size)
    ratio = math.e / (math.e - 1)
    assert regrets.mean() <= ratio * min(reg_ftl, cfg.bound(100)) + 1 + 3 * sem
