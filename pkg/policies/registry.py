from typing import Callable, Dict, List

from core.errors import UsageError
from core.protocol import PolicyState
from policies.cover import CoverPolicy
from policies.ftl import FollowTheLeader
from policies.hedge import Hedge, LearningRateSchedule

PolicyFactory = Callable[[int, int], PolicyState]


def make_ftl(horizon: int, m: int) -> PolicyState:
    return FollowTheLeader(m, horizon)


def make_hedge(horizon: int, m: int) -> PolicyState:
    return Hedge(m, horizon, LearningRateSchedule.FIXED)


def make_hedge_small_loss(horizon: int, m: int) -> PolicyState:
    return Hedge(m, horizon, LearningRateSchedule.SMALL_LOSS)


def make_cover(horizon: int, m: int) -> PolicyState:
    return CoverPolicy(m, horizon)


# Module-level functions so sweep work units pickle across processes
POLICY_FACTORIES: Dict[str, PolicyFactory] = {
    "ftl": make_ftl,
    "hedge": make_hedge,
    "hedge_small_loss": make_hedge_small_loss,
    "cover": make_cover,
}


def available_policies() -> List[str]:
    return sorted(POLICY_FACTORIES)


def get_factory(name: str) -> PolicyFactory:
    try:
        return POLICY_FACTORIES[name]
    except KeyError:
        raise UsageError(f"unknown policy '{name}', expected one of {available_policies()}") from None
