import logging
import math
from typing import List

from pydantic import BaseModel

logger = logging.getLogger(__name__)


class InvariantResult(BaseModel):
    name: str
    passed: bool
    measured: float
    bound: float
    slack: float
    detail: str = ""


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    results: List[InvariantResult]

    @classmethod
    def from_results(cls, suite: str, results: List[InvariantResult]) -> "SuiteReport":
        report = cls(suite=suite, passed=all(r.passed for r in results), results=results)
        for failure in report.failures():
            logger.warning("%s: %s failed (measured %.6g, bound %.6g)", suite, failure.name, failure.measured, failure.bound)
        logger.info("suite %s: %d/%d invariants hold", suite, sum(r.passed for r in results), len(results))
        return report

    def failures(self) -> List[InvariantResult]:
        return [r for r in self.results if not r.passed]


def check_at_most(name: str, measured: float, bound: float, detail: str = "") -> InvariantResult:
    """measured <= bound; slack is the remaining headroom"""
    passed = math.isfinite(measured) and measured <= bound
    return InvariantResult(
        name=name, passed=passed, measured=measured, bound=bound, slack=bound - measured, detail=detail
    )


def check_at_least(name: str, measured: float, bound: float, detail: str = "") -> InvariantResult:
    passed = math.isfinite(measured) and measured >= bound
    return InvariantResult(
        name=name, passed=passed, measured=measured, bound=bound, slack=measured - bound, detail=detail
    )
