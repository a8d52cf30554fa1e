import math

import numpy as np
import pytest

from config import defaults
from core.errors import DimensionMismatchError, HorizonError, UsageError
from core.protocol import PolicyState, run_policy
from core.types import CumulativeLoss
from policies.cover import (
    CoverPolicy,
    CoverState,
    binomial_half_pmf,
    cover_action,
    cover_bound,
    cover_potential,
    cover_prediction,
    cover_split,
    rademacher_fn,
)
from policies.ftl import FollowTheLeader, ftl_action, leader_action
from policies.hedge import Hedge, LearningRateSchedule, hedge_action, hedge_worst_case_bound, tuned_learning_rate
from policies.registry import available_policies, get_factory
from sequences.embedding import binary_to_losses
from sequences.generators import gen_bernoulli


def observed(policy, rows):
    for row in rows:
        policy.observe(np.asarray(row, dtype=float))
    return policy


def test_ftl_unique_leader():
    state = observed(FollowTheLeader(2), [(0.5, 1.0), (0.0, 0.5)])
    assert ftl_action(state).weights.tolist() == [1.0, 0.0]


def test_ftl_tie_is_uniform():
    state = observed(FollowTheLeader(2), [(1.0, 0.0), (0.0, 1.0)])
    assert ftl_action(state).weights.tolist() == [0.5, 0.5]


def test_ftl_first_round_is_uniform():
    assert FollowTheLeader(4).act().weights.tolist() == [0.25] * 4


def test_leader_action_over_three_way_tie():
    cumulative = CumulativeLoss(4)
    cumulative.add(np.array([1.0, 1.0, 2.0, 1.0]))
    assert leader_action(cumulative).weights.tolist() == pytest.approx([1 / 3, 1 / 3, 0.0, 1 / 3])


def test_hedge_equal_losses_are_uniform():
    state = observed(Hedge(2, eta=3.0), [(0.4, 0.4)])
    assert hedge_action(state).weights.tolist() == [0.5, 0.5]


def test_hedge_softmax_by_hand():
    state = observed(Hedge(2, eta=math.log(2.0)), [(1.0, 0.0)])
    assert hedge_action(state).weights == pytest.approx([1 / 3, 2 / 3], abs=1e-12)


def test_hedge_large_rate_matches_ftl(rng):
    rows = rng.random((10, 5))
    hedge = observed(Hedge(5, eta=1e6), rows)
    ftl = observed(FollowTheLeader(5), rows)
    assert hedge_action(hedge).weights == pytest.approx(ftl_action(ftl).weights, abs=1e-12)


def test_hedge_fixed_rate_is_tuned_to_horizon():
    hedge = Hedge(3, horizon=200)
    assert hedge.current_eta() == pytest.approx(math.sqrt(8 * math.log(3) / 200))
    assert tuned_learning_rate(200, 3) == hedge.current_eta()
    assert hedge_worst_case_bound(200, 3) == pytest.approx(math.sqrt(200 * math.log(3) / 2))


def test_hedge_small_loss_guess_doubles_past_best_loss():
    hedge = observed(Hedge(2, schedule=LearningRateSchedule.SMALL_LOSS), [(1.0, 1.0)] * 3)
    assert hedge.loss_guess() == pytest.approx(8 * math.log(2))
    assert hedge.current_eta() == pytest.approx(math.sqrt(2 * math.log(2) / (8 * math.log(2))))
    assert hedge.name == "hedge_small_loss"


def test_hedge_rejects_nonpositive_rate():
    with pytest.raises(ValueError):
        Hedge(2, eta=0.0)


@pytest.mark.parametrize("n, expected", [(1, 0.5), (2, 0.5), (3, 0.75), (4, 0.75)])
def test_rademacher_small_values(n, expected):
    assert rademacher_fn(n) == pytest.approx(expected, abs=1e-12)


def test_rademacher_asymptotics():
    n = 10_000
    assert rademacher_fn(n) == pytest.approx(math.sqrt(n / (2 * math.pi)), rel=0.01)


def test_rademacher_rejects_empty_horizon():
    with pytest.raises(HorizonError):
        rademacher_fn(0)


def test_binomial_pmf_sums_to_one():
    assert binomial_half_pmf(0).tolist() == [1.0]
    assert math.fsum(binomial_half_pmf(301)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 7, 50])
def test_cover_empty_history_predicts_half(n):
    assert cover_action(CoverState(n=n)) == pytest.approx(0.5, abs=1e-12)


def test_cover_follows_decided_majority():
    # n = 2 after seeing a one: phi(1,0) = 1.5 and phi(1,1) = 0.5
    assert cover_split(2, 2, 1) == pytest.approx((1.5, 0.5))
    assert cover_prediction(2, 2, 1) == 1.0


def test_cover_balanced_prefix_predicts_half():
    assert cover_prediction(6, 3, 1) == pytest.approx(0.5, abs=1e-12)


def test_cover_potential_at_start_is_half_horizon():
    assert cover_potential(10, 0, 0) == pytest.approx(5.0, abs=1e-12)


def test_cover_action_past_horizon():
    with pytest.raises(HorizonError):
        cover_action(CoverState(n=3, t=4))


def test_cover_policy_is_an_equalizer(rng):
    n = 12
    for _ in range(5):
        losses = binary_to_losses(gen_bernoulli(n, float(rng.uniform()), int(rng.integers(1000))))
        assert run_policy(CoverPolicy(2, n), losses).regret == pytest.approx(rademacher_fn(n), abs=1e-9)


def test_cover_policy_validation():
    with pytest.raises(DimensionMismatchError):
        CoverPolicy(3, 10)
    with pytest.raises(HorizonError):
        CoverPolicy(2, 0)
    with pytest.raises(HorizonError):
        CoverPolicy(2, defaults.cover_max_horizon + 1)
    with pytest.raises(ValueError):
        CoverPolicy(2, 5).observe(np.array([0.5, 0.5]))


def test_cover_bound_forms():
    assert cover_bound()(4) == pytest.approx(0.75)
    assert cover_bound(asymptotic=True)(100) == pytest.approx(math.sqrt(100 / (2 * math.pi)))


def test_registry_builds_every_policy():
    for name in available_policies():
        policy = get_factory(name)(10, 2)
        assert isinstance(policy, PolicyState)
        assert policy.name == name


def test_registry_rejects_unknown_names():
    with pytest.raises(UsageError):
        get_factory("flipflop")
