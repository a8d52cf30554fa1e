class SmartError(Exception):
    """Base class for all library errors"""


class InvalidActionError(SmartError, ValueError):
    """A policy produced a point outside the probability simplex"""


class DimensionMismatchError(SmartError, ValueError):
    """Vectors of incompatible length were combined"""


class HorizonError(SmartError, ValueError):
    """A round index or horizon is outside the supported range"""


class ThresholdError(SmartError, ValueError):
    """Invalid input to the switching-threshold machinery"""


class LossFileError(SmartError, ValueError):
    """A loss or sequence file could not be parsed"""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class UsageError(SmartError, ValueError):
    """Invalid experiment configuration supplied to the CLI"""
