import numpy as np
import pytest

from analysis.crossings import line_crossings
from core.errors import HorizonError, LossFileError
from core.protocol import best_fixed_loss, expected_round_loss
from core.types import ActionDistribution
from sequences.corpus import entries_of_kind, standard_corpus
from sequences.embedding import binary_to_losses
from sequences.generators import (
    BinarySequence,
    bits_from,
    gen_alternating,
    gen_bernoulli,
    gen_lead_change,
    gen_random_losses,
)
from sequences.io import load_bits, load_losses, save_bits, save_losses


def test_bernoulli_extremes():
    assert gen_bernoulli(100, 0.0, 1).ones == 0
    assert gen_bernoulli(100, 1.0, 1).ones == 100


def test_bernoulli_mean():
    y = gen_bernoulli(100_000, 0.5, 9)
    assert abs(y.bits.mean() - 0.5) < 0.01


def test_bernoulli_is_reproducible():
    assert gen_bernoulli(500, 0.3, 42) == gen_bernoulli(500, 0.3, 42)
    assert gen_bernoulli(500, 0.3, 42) != gen_bernoulli(500, 0.3, 43)


def test_bernoulli_rejects_bad_probability():
    with pytest.raises(ValueError):
        gen_bernoulli(10, 1.5, 0)


def test_lead_change_layout():
    assert gen_lead_change(6, 2).bits.tolist() == [0, 1, 0, 1, 1, 1]
    assert gen_lead_change(5, 0).bits.tolist() == [1] * 5
    assert gen_lead_change(4, 2).bits.tolist() == [0, 1, 0, 1]


def test_lead_change_rejects_too_many_pairs():
    with pytest.raises(HorizonError):
        gen_lead_change(5, 3)


@pytest.mark.parametrize("n", [1, 2, 9, 40])
def test_lead_change_crossing_count(n):
    for c in range(0, (n - 1) // 2 + 1):
        y = gen_lead_change(n, c)
        assert line_crossings(y.prefix(n - 1)) == c + 1


def test_alternating():
    assert gen_alternating(5).bits.tolist() == [1, 0, 1, 0, 1]


def test_random_losses_shape_and_range():
    losses = gen_random_losses(30, 4, 2)
    assert losses.entries.shape == (30, 4)
    assert losses.entries.min() >= 0.0 and losses.entries.max() <= 1.0


def test_binary_sequence_validation():
    with pytest.raises(ValueError):
        bits_from([0, 2])
    with pytest.raises(ValueError):
        BinarySequence(np.array([0.5, 1.0]))
    assert BinarySequence.from_string("0110").ones == 2


def test_embedding_rows():
    assert binary_to_losses(bits_from([1])).entries.tolist() == [[1.0, 0.0]]
    assert binary_to_losses(bits_from([0])).entries.tolist() == [[0.0, 1.0]]


def test_embedding_best_expert_is_minority_count(rng):
    for _ in range(20):
        y = gen_bernoulli(50, float(rng.uniform()), int(rng.integers(1000)))
        assert best_fixed_loss(binary_to_losses(y))[1] == min(y.ones, y.n - y.ones)


def test_embedding_loss_is_absolute_error(rng):
    for _ in range(200):
        a = float(rng.uniform())
        y = int(rng.integers(2))
        assert expected_round_loss(ActionDistribution.binary(a), (y, 1 - y)) == pytest.approx(abs(a - y), abs=1e-12)


def test_loss_file_round_trip(tmp_path):
    losses = gen_random_losses(25, 3, 5)
    path = tmp_path / "losses.csv"
    save_losses(path, losses)
    assert path.read_text().splitlines()[0] == "# m=3 n=25"
    assert np.array_equal(load_losses(path).entries, losses.entries)


def test_loss_file_without_header(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("0.5,0.25\n1,0\n")
    losses = load_losses(path)
    assert losses.m == 2
    assert losses.entries.tolist() == [[0.5, 0.25], [1.0, 0.0]]


@pytest.mark.parametrize(
    "text, line",
    [
        ("# m=2 n=2\n0.5,0.5\n1.5,0\n", 3),
        ("0.5,0.5\n0.5,0.5,0.5\n", 2),
        ("0.5,abc\n", 1),
        ("0.1,0.2\n# stray\n", 2),
    ],
)
def test_loss_file_errors_name_the_line(tmp_path, text, line):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(LossFileError) as info:
        load_losses(path)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_loss_file_header_count_mismatch(tmp_path):
    path = tmp_path / "short.csv"
    path.write_text("# m=2 n=3\n0,1\n")
    with pytest.raises(LossFileError):
        load_losses(path)


def test_bit_file_round_trip(tmp_path):
    y = gen_bernoulli(64, 0.4, 8)
    path = tmp_path / "bits.txt"
    save_bits(path, y)
    assert load_bits(path) == y


def test_bit_file_rejects_other_characters(tmp_path):
    path = tmp_path / "bits.txt"
    path.write_text("0102\n")
    with pytest.raises(LossFileError, match="column 4"):
        load_bits(path)


def test_standard_corpus_composition():
    entries = standard_corpus(n=100, seeds=range(3), c_values=range(1, 51))
    assert len(entries) == 10 * 3 + 50 + 1
    assert len(entries_of_kind(entries, "lead_change")) == 50
    assert entries_of_kind(entries, "alternating")[0].sequence.n == 100
    assert all(e.losses.n == 100 for e in entries)
