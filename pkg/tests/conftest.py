import numpy as np
import pytest

from core.types import LossMatrix
from sequences.embedding import binary_to_losses
from sequences.generators import bits_from, gen_alternating


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def alternating_four() -> LossMatrix:
    """Binary (1, 0, 1, 0) in the two-expert embedding"""
    return binary_to_losses(bits_from([1, 0, 1, 0]))


@pytest.fixture
def alternating_hundred() -> LossMatrix:
    return binary_to_losses(gen_alternating(100))


@pytest.fixture
def all_ones() -> LossMatrix:
    return binary_to_losses(bits_from([1] * 50))
