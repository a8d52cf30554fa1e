import math
from typing import Dict, Iterable, Optional

from pydantic import BaseModel
from scipy.special import erfc

from analysis.crossings import pnk_vector
from config import defaults
from policies.cover import rademacher_fn


class LowerBoundReport(BaseModel):
    gamma_inf: float
    exp_component: float
    q_component: float
    reference: float
    deviation: float
    finite_n_ratios: Dict[int, float]


def q_function(x: float) -> float:
    """Gaussian tail Q(x) = P[N(0,1) > x]"""
    return 0.5 * float(erfc(x / math.sqrt(2.0)))


def finite_n_ratio(n: int) -> float:
    """2 f_{n+1} / E[min{c(eps^n), 2 f_{n+1}}] for even n.

    c = k + 1 saturates the cap once k >= floor(2 f_{n+1}), so the tail enters
    through its total mass.
    """
    cap = 2.0 * rademacher_fn(n + 1)
    saturation = int(math.floor(cap))
    head = pnk_vector(n, saturation - 1) if saturation >= 1 else []
    head_mass = math.fsum(head)
    expected = math.fsum((k + 1) * p for k, p in enumerate(head)) + cap * (1.0 - head_mass)
    return cap / expected


def lower_bound_constant(horizons: Optional[Iterable[int]] = None) -> LowerBoundReport:
    """gamma_inf = 1 / (1 - e^{-1/pi} + 2 Q(sqrt(2/pi))), with finite-n ratios alongside"""
    horizons = defaults.lower_bound_horizons if horizons is None else list(horizons)
    exp_component = math.exp(-1.0 / math.pi)
    q_component = q_function(math.sqrt(2.0 / math.pi))
    gamma_inf = 1.0 / (1.0 - exp_component + 2.0 * q_component)
    return LowerBoundReport(
        gamma_inf=gamma_inf,
        exp_component=exp_component,
        q_component=q_component,
        reference=defaults.lower_bound_reference,
        deviation=abs(gamma_inf - defaults.lower_bound_reference),
        finite_n_ratios={n: finite_n_ratio(n) for n in horizons},
    )
