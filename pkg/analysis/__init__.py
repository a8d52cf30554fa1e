from analysis.asymptotics import BracketReport, gaussian_profile, pnk_bound_check
from analysis.checks import InvariantResult, SuiteReport, check_at_least, check_at_most
from analysis.crossings import (
    CrossingDistribution,
    crossing_distribution,
    histogram_agreement,
    line_crossings,
    pnk_exact,
    pnk_exact_rational,
    pnk_vector,
    sample_crossing_counts,
)
from analysis.identities import CoverAchievability, cover_achievability, ftl_regret_three_ways, verify_ftl_identity
from analysis.lower_bound import LowerBoundReport, finite_n_ratio, lower_bound_constant, q_function

__all__ = [
    "BracketReport",
    "CoverAchievability",
    "CrossingDistribution",
    "InvariantResult",
    "LowerBoundReport",
    "SuiteReport",
    "check_at_least",
    "check_at_most",
    "cover_achievability",
    "crossing_distribution",
    "finite_n_ratio",
    "ftl_regret_three_ways",
    "gaussian_profile",
    "histogram_agreement",
    "line_crossings",
    "lower_bound_constant",
    "pnk_bound_check",
    "pnk_exact",
    "pnk_exact_rational",
    "pnk_vector",
    "q_function",
    "sample_crossing_counts",
    "verify_ftl_identity",
]
