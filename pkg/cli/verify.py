import json
import logging

from analysis.suites import FULL, QUICK, run_suites

logger = logging.getLogger(__name__)


def cmd_verify(suite: str, quick: bool = False) -> int:
    """Print one JSON report per suite; 0 when every invariant holds, 1 otherwise"""
    reports = run_suites(suite, QUICK if quick else FULL)
    print(json.dumps([report.model_dump(mode="json") for report in reports], indent=2))
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        logger.error("invariant failures in: %s", ", ".join(failed))
        return 1
    return 0
