from typing import List

from pydantic import BaseModel
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Sweep worker processes; the only value read from the environment
    threads: int = 1

    model_config = SettingsConfigDict(env_prefix="SMART_", env_file=".env", extra="ignore")


class Defaults(BaseModel):
    """Numeric defaults shared by the library and the CLI."""

    # Tolerances
    simplex_tolerance: float = 1e-12
    identity_tolerance: float = 1e-9

    # Hedge small-loss additive constant (g(L*) = 2*sqrt(2 L* ln m) + kappa ln m)
    kappa: float = 4.0
    # Extra slack per epoch when checking the explicit small-loss inequality
    epoch_slack: float = 1.0
    # Constant C of the sqrt(L*) instantiation check
    closed_form_constant: float = 50.0

    # Exact Cover predictor is O(n^2) per run
    cover_max_horizon: int = 20000
    cover_enumeration_max: int = 14

    # Crossing histogram check
    histogram_samples: int = 100_000
    histogram_horizon: int = 200
    histogram_max_k: int = 30
    histogram_sigmas: float = 3.0

    # Band for flagging an unusual Bernoulli draw
    bernoulli_flag_sigmas: float = 4.0

    # Lower bound
    lower_bound_reference: float = 1.4335
    lower_bound_horizons: List[int] = [2, 10, 100, 1000, 10_000, 100_000, 1_000_000]

    seed: int = 20240601


settings = Settings()
defaults = Defaults()
