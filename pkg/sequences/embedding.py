import numpy as np

from core.types import LossMatrix
from sequences.generators import BinarySequence


def binary_to_losses(y: BinarySequence) -> LossMatrix:
    """Row t = (y_t, 1 - y_t): expert 0 always predicts 0, expert 1 always predicts 1"""
    bits = y.bits.astype(np.float64)
    return LossMatrix(np.column_stack([bits, 1.0 - bits]))
