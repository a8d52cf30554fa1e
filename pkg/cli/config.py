import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

from pydantic import BaseModel, field_validator, model_validator

from config import defaults
from core.errors import UsageError
from policies.registry import available_policies

SequenceKind = Literal["bernoulli", "lead_change", "alternating"]

META_POLICIES = ("smart", "smart_small_loss")
LIST_FIELDS = ("grid", "policies", "seeds")
RANGE_PATTERN = re.compile(r"^\s*(-?[\d.]+)\s*:\s*(-?[\d.]+)\s*:\s*([\d.]+)\s*$")


class ExperimentConfig(BaseModel):
    """One sweep: a sequence family over a parameter grid, a policy roster and seeds"""

    sequence_kind: SequenceKind = "bernoulli"
    n: int = 1000
    grid: List[float] = [round(0.05 * i, 2) for i in range(1, 11)]
    policies: List[str] = ["ftl", "cover", "smart"]
    threshold_mode: Literal["deterministic", "randomized"] = "deterministic"
    worst_case: str = "cover"
    asymptotic_bound: bool = True
    seeds: List[int] = list(range(10))
    output: str = "sweep.csv"

    @field_validator("n")
    @classmethod
    def validate_horizon(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"horizon must be >= 1, got {v}")
        return v

    @field_validator("policies")
    @classmethod
    def validate_policies(cls, v: List[str]) -> List[str]:
        known = set(available_policies()) | set(META_POLICIES)
        unknown = [p for p in v if p not in known]
        if unknown or not v:
            raise ValueError(f"unknown or empty policy roster {unknown}, expected names from {sorted(known)}")
        return v

    @field_validator("worst_case")
    @classmethod
    def validate_worst_case(cls, v: str) -> str:
        if v not in available_policies() or v == "ftl":
            raise ValueError(f"worst-case policy must be one of {[p for p in available_policies() if p != 'ftl']}")
        return v

    @field_validator("seeds")
    @classmethod
    def validate_seeds(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("at least one seed is required")
        if len(set(v)) != len(v):
            raise ValueError("seeds must be distinct")
        return v

    @model_validator(mode="after")
    def validate_grid(self) -> "ExperimentConfig":
        if self.sequence_kind == "alternating":
            self.grid = [0.0]
        if not self.grid:
            raise ValueError("sweep grid is empty")
        if self.sequence_kind == "bernoulli" and any(not 0.0 <= p <= 1.0 for p in self.grid):
            raise ValueError(f"bernoulli grid values must lie in [0, 1], got {self.grid}")
        if self.sequence_kind == "lead_change":
            bad = [c for c in self.grid if c != int(c) or c < 0 or 2 * c > self.n]
            if bad:
                raise ValueError(f"lead-change counts must be integers with 0 <= 2c <= n, got {bad}")
        uses_cover = "cover" in self.policies or (self.worst_case == "cover" and "smart" in self.policies)
        if uses_cover and self.n > defaults.cover_max_horizon:
            raise ValueError(f"the exact binary predictor supports n <= {defaults.cover_max_horizon}")
        return self


def parse_list(value: str) -> List[str]:
    """'a,b,c' or an inclusive range 'start:stop:step'"""
    match = RANGE_PATTERN.match(value)
    if match is None:
        return [item.strip() for item in value.split(",") if item.strip()]
    start, stop, step = (float(g) for g in match.groups())
    if step <= 0:
        raise UsageError(f"range step must be positive in '{value}'")
    count = int(round((stop - start) / step)) + 1
    points = [round(start + i * step, 10) for i in range(max(count, 0))]
    return [str(int(x)) if x == int(x) else repr(x) for x in points]


def load_config_file(path: str) -> Dict[str, Any]:
    """Flat `key = value` lines; '#' starts a comment"""
    values: Dict[str, Any] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{line_no}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        values[key] = parse_list(value) if key in LIST_FIELDS else value
    return values


def build_config(file_values: Optional[Mapping[str, Any]], flag_values: Mapping[str, Any]) -> ExperimentConfig:
    """Config file first, flags on top; validation happens once the two are merged"""
    merged: Dict[str, Any] = dict(file_values or {})
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    unknown = set(merged) - set(ExperimentConfig.model_fields)
    if unknown:
        raise UsageError(f"unknown configuration keys: {sorted(unknown)}")
    return ExperimentConfig(**merged)
