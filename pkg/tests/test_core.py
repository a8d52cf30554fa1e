import numpy as np
import pytest

from core.errors import DimensionMismatchError, InvalidActionError, SmartError
from core.protocol import PolicyState, best_fixed_loss, expected_round_loss, regret_decomposition, run_policy
from core.types import ActionDistribution, CumulativeLoss, LossMatrix, RunRecord, hindsight_optimum
from policies.ftl import FollowTheLeader


def cumulative_of(totals):
    cumulative = CumulativeLoss(len(totals))
    cumulative.add(np.asarray(totals, dtype=float))
    return cumulative


@pytest.mark.parametrize(
    "totals, leaders, best",
    [
        ((2.0, 1.0, 3.0), [1], 1.0),
        ((1.0, 1.0, 2.0), [0, 1], 1.0),
        ((0.0, 0.0, 0.0, 0.0), [0, 1, 2, 3], 0.0),
    ],
)
def test_hindsight_optimum(totals, leaders, best):
    assert hindsight_optimum(cumulative_of(totals)) == (leaders, best)


def test_fresh_cumulative_is_all_tied():
    cumulative = CumulativeLoss(3)
    assert cumulative.t == 0
    assert hindsight_optimum(cumulative) == ([0, 1, 2], 0.0)


@pytest.mark.parametrize(
    "weights, row, expected",
    [
        ((1.0, 0.0), (0.3, 0.9), 0.3),
        ((0.5, 0.5), (0.0, 1.0), 0.5),
        ((1 / 3, 2 / 3), (0.6, 0.3), 0.4),
    ],
)
def test_expected_round_loss(weights, row, expected):
    assert expected_round_loss(ActionDistribution(np.array(weights)), row) == pytest.approx(expected, abs=1e-12)


def test_expected_round_loss_rejects_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        expected_round_loss(ActionDistribution.uniform(2), (0.1, 0.2, 0.3))


@pytest.mark.parametrize("weights", [(0.6, 0.6), (-0.1, 1.1), (0.5, float("nan")), (1.0,)])
def test_action_distribution_rejects_off_simplex(weights):
    with pytest.raises(InvalidActionError):
        ActionDistribution(np.array(weights))


def test_action_distribution_constructors():
    assert ActionDistribution.uniform_over(4, [1, 3]).weights.tolist() == [0.0, 0.5, 0.0, 0.5]
    assert ActionDistribution.point_mass(3, 2).weights.tolist() == [0.0, 0.0, 1.0]
    assert ActionDistribution.binary(0.25).weights.tolist() == [0.75, 0.25]


def test_loss_matrix_validation():
    with pytest.raises(ValueError):
        LossMatrix.from_rows([[0.5, 1.5]])
    with pytest.raises(DimensionMismatchError):
        LossMatrix.from_rows([[0.5], [0.2]])
    with pytest.raises(DimensionMismatchError):
        LossMatrix(np.zeros((0, 2)))


def test_loss_matrix_is_read_only_and_windows():
    losses = LossMatrix.from_rows([[0.1, 0.2], [0.3, 0.4], [0.5, 0.6]])
    with pytest.raises(ValueError):
        losses.entries[0, 0] = 1.0
    assert losses.row(2).tolist() == [0.3, 0.4]
    assert losses.window(1, 3).entries.tolist() == [[0.3, 0.4], [0.5, 0.6]]
    assert len(losses) == 3


def test_cumulative_loss_rejects_wrong_width():
    with pytest.raises(DimensionMismatchError):
        CumulativeLoss(2).add(np.zeros(3))


def test_ftl_on_alternating_bits(alternating_four):
    record = run_policy(FollowTheLeader(2, 4), alternating_four)
    assert record.round_losses.tolist() == [0.5, 1.0, 0.5, 1.0]
    assert record.total_loss == 3.0
    assert record.regret == 1.0


def test_ftl_on_experts_instance():
    record = run_policy(FollowTheLeader(2, 2), LossMatrix.from_rows([[1, 0], [0, 1]]))
    assert record.regret == pytest.approx(0.5)


def test_all_zero_losses_have_zero_regret():
    record = run_policy(FollowTheLeader(3, 20), LossMatrix(np.zeros((20, 3))))
    assert record.regret == 0.0
    assert record.total_loss == 0.0


class BrokenPolicy(PolicyState):
    name = "broken"

    def __init__(self, m, horizon=0):
        super().__init__(m, horizon)
        self.t = 0

    def act(self):
        self.t += 1
        if self.t == 2:
            return ActionDistribution(np.array([0.9, 0.9]))
        return ActionDistribution.uniform(self.m)

    def observe(self, row):
        pass


def test_run_policy_names_the_round_of_an_invalid_action():
    with pytest.raises(InvalidActionError, match="round 2"):
        run_policy(BrokenPolicy(2), LossMatrix(np.zeros((3, 2))))


def test_run_policy_rejects_expert_count_mismatch():
    with pytest.raises(DimensionMismatchError):
        run_policy(FollowTheLeader(3), LossMatrix(np.zeros((3, 2))))


def test_run_record_accounting(rng):
    losses = LossMatrix(rng.random((100, 5)))
    record = run_policy(FollowTheLeader(5, 100), losses)
    _, best = best_fixed_loss(losses)
    assert record.total_loss == pytest.approx(record.round_losses.sum(), abs=1e-9)
    assert record.regret == pytest.approx(record.total_loss - best, abs=1e-9)
    assert record.regret >= -1e-9
    assert 0.0 <= record.total_loss <= losses.n
    assert record.last_ftl_round == 100


def test_regret_decomposition_matches_direct_regret(rng):
    losses = LossMatrix(rng.random((60, 4)))
    actions = rng.random((60, 4))
    actions /= actions.sum(axis=1, keepdims=True)
    direct = float(np.einsum("ij,ij->", actions, losses.entries)) - best_fixed_loss(losses)[1]
    assert regret_decomposition(losses, actions) == pytest.approx(direct, abs=1e-9)


def test_regret_decomposition_checks_shape():
    with pytest.raises(DimensionMismatchError):
        regret_decomposition(LossMatrix(np.zeros((3, 2))), np.zeros((2, 2)))


def test_last_ftl_round_prefers_recorded_switch():
    record = RunRecord(actions=np.zeros((5, 2)), round_losses=np.zeros(5), total_loss=0.0, regret=0.0,
                       switch_times=[3])
    assert record.last_ftl_round == 3
    assert record.n == 5


def test_errors_are_value_errors():
    assert issubclass(InvalidActionError, SmartError)
    assert issubclass(InvalidActionError, ValueError)
