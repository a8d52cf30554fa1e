import logging
from typing import List, Optional

from analysis.lower_bound import lower_bound_constant
from core.errors import UsageError
from sequences.embedding import binary_to_losses
from sequences.generators import gen_alternating, gen_bernoulli, gen_lead_change, gen_random_losses
from sequences.io import save_bits, save_losses

logger = logging.getLogger(__name__)

GEN_KINDS = ("bernoulli", "lead_change", "alternating", "random_losses")


def cmd_gen(
    kind: str,
    n: int,
    output: str,
    param: Optional[float] = None,
    seed: Optional[int] = None,
    m: int = 2,
    as_losses: bool = False,
) -> int:
    if n < 1:
        raise UsageError(f"horizon must be >= 1, got {n}")
    if kind == "random_losses":
        if m < 2:
            raise UsageError(f"need at least two experts, got m={m}")
        save_losses(output, gen_random_losses(n, m, seed))
        print(f"wrote {n}x{m} losses to {output}")
        return 0

    if kind == "bernoulli":
        if param is None:
            raise UsageError("bernoulli sequences need --param p")
        y = gen_bernoulli(n, param, seed)
    elif kind == "lead_change":
        if param is None or param != int(param):
            raise UsageError("lead-change sequences need an integer --param c")
        y = gen_lead_change(n, int(param))
    elif kind == "alternating":
        y = gen_alternating(n)
    else:
        raise UsageError(f"unknown sequence kind '{kind}', expected one of {GEN_KINDS}")

    if as_losses:
        save_losses(output, binary_to_losses(y))
    else:
        save_bits(output, y)
    print(f"wrote {kind} sequence of length {n} to {output}")
    return 0


def cmd_lowerbound(horizons: Optional[List[int]] = None) -> int:
    if horizons and any(n < 2 or n % 2 for n in horizons):
        raise UsageError(f"finite-n ratios need even horizons >= 2, got {horizons}")
    print(lower_bound_constant(horizons).model_dump_json(indent=2))
    return 0
