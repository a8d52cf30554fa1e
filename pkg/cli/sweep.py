import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel

from cli.config import ExperimentConfig
from config import defaults, settings
from core.protocol import run_policy
from core.types import LossMatrix
from policies.cover import cover_bound
from policies.hedge import hedge_worst_case_bound
from policies.registry import get_factory
from sequences.embedding import binary_to_losses
from sequences.generators import BinarySequence, gen_alternating, gen_bernoulli, gen_lead_change
from smallloss.bounds import small_loss_g
from smallloss.epochs import SmallLossConfig, small_loss_smart_run
from smart.agent import SmartConfig, draw_threshold, smart_run
from smart.randomized import switch_round
from smart.threshold import ThresholdMode
from smart.trace import ftl_trace

logger = logging.getLogger(__name__)

ROW_COLUMNS = ["sequence_kind", "param", "seed", "policy", "regret", "switch_time", "threshold_draw"]
COMPETITIVE_RATIO = math.e / (math.e - 1.0)


@dataclass
class SweepUnit:
    """One distinct input sequence and the seeds evaluated on it"""

    kind: str
    param: float
    seeds: List[int]
    n: int
    policies: List[str]
    threshold_mode: str
    worst_case: str
    asymptotic_bound: bool


class SweepSummary(BaseModel):
    config: ExperimentConfig
    rows: int
    groups: List[Dict[str, Any]]


def worst_case_bound(name: str, asymptotic: bool, m: int = 2) -> Callable[[int], float]:
    """g(n) for the fallback policy; small-loss Hedge is capped at g(L*) with L* <= n"""
    if name == "cover":
        return cover_bound(asymptotic)
    if name == "hedge_small_loss":
        return lambda horizon: small_loss_g(horizon, m, defaults.kappa)
    return lambda horizon: hedge_worst_case_bound(horizon, m)


def build_sequence(kind: str, n: int, param: float, seed: Optional[int]) -> BinarySequence:
    if kind == "bernoulli":
        return gen_bernoulli(n, param, seed)
    if kind == "lead_change":
        return gen_lead_change(n, int(param))
    return gen_alternating(n)


def plan_units(cfg: ExperimentConfig) -> List[SweepUnit]:
    """Bernoulli seeds each make a new sequence; deterministic kinds share one sequence across seeds"""
    common = dict(
        n=cfg.n,
        policies=cfg.policies,
        threshold_mode=cfg.threshold_mode,
        worst_case=cfg.worst_case,
        asymptotic_bound=cfg.asymptotic_bound,
    )
    if cfg.sequence_kind == "bernoulli":
        return [SweepUnit(cfg.sequence_kind, p, [s], **common) for p in cfg.grid for s in cfg.seeds]
    return [SweepUnit(cfg.sequence_kind, p, list(cfg.seeds), **common) for p in cfg.grid]


def _smart_rows(unit: SweepUnit, losses: LossMatrix, trace: np.ndarray) -> List[Tuple[int, float, int, float]]:
    """(seed, regret, switch_time, threshold) for each seed, one run per distinct switch round"""
    mode = ThresholdMode(unit.threshold_mode)
    runs: Dict[int, float] = {}
    out = []
    for seed in unit.seeds:
        cfg = SmartConfig(
            bound=worst_case_bound(unit.worst_case, unit.asymptotic_bound, losses.m),
            worst_case_factory=get_factory(unit.worst_case),
            mode=mode,
            seed=seed,
        )
        theta = draw_threshold(cfg, losses.n)
        t_sw = switch_round(trace, theta)
        if t_sw not in runs:
            runs[t_sw] = smart_run(losses, cfg, threshold=theta).regret
        out.append((seed, runs[t_sw], t_sw, theta))
    return out


def run_unit(unit: SweepUnit) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    """Rows for every (seed, policy) of one sequence, plus the FTL reference per seed"""
    y = build_sequence(unit.kind, unit.n, unit.param, unit.seeds[0] if unit.kind == "bernoulli" else None)
    losses = binary_to_losses(y)
    trace = ftl_trace(losses)
    g_n = worst_case_bound(unit.worst_case, unit.asymptotic_bound, losses.m)(unit.n)

    rows: List[Dict[str, Any]] = []
    for name in unit.policies:
        if name == "smart":
            for seed, regret, t_sw, theta in _smart_rows(unit, losses, trace):
                rows.append(_row(unit, seed, name, regret, t_sw, theta))
            continue
        if name == "smart_small_loss":
            # always small-loss Hedge: the epoch guesses need a small-loss guarantee
            record = small_loss_smart_run(losses, SmallLossConfig())
        else:
            record = run_policy(get_factory(name)(unit.n, losses.m), losses)
        for seed in unit.seeds:
            rows.append(_row(unit, seed, name, record.regret, record.last_ftl_round, None))

    references = [
        {"sequence_kind": unit.kind, "param": unit.param, "seed": seed, "ftl_regret": float(trace[-1]), "g_n": g_n}
        for seed in unit.seeds
    ]
    logger.debug("finished %s(%g) over %d seeds", unit.kind, unit.param, len(unit.seeds))
    return rows, references


def _row(unit: SweepUnit, seed: int, policy: str, regret: float, switch_time: int, theta: Optional[float]):
    return {
        "sequence_kind": unit.kind,
        "param": unit.param,
        "seed": seed,
        "policy": policy,
        "regret": regret,
        "switch_time": switch_time,
        "threshold_draw": theta,
    }


def execute(cfg: ExperimentConfig) -> Tuple[pd.DataFrame, pd.DataFrame]:
    units = plan_units(cfg)
    logger.info("sweeping %d sequences with %d worker(s)", len(units), settings.threads)
    if settings.threads > 1:
        with ProcessPoolExecutor(max_workers=settings.threads) as pool:
            outputs = list(pool.map(run_unit, units))
    else:
        outputs = [run_unit(unit) for unit in units]

    rows = pd.DataFrame([row for out in outputs for row in out[0]], columns=ROW_COLUMNS)
    rows = rows.sort_values(["sequence_kind", "param", "seed", "policy"], kind="mergesort").reset_index(drop=True)
    references = pd.DataFrame([ref for out in outputs for ref in out[1]])
    return rows, summarize(rows, references)


def summarize(rows: pd.DataFrame, references: pd.DataFrame) -> pd.DataFrame:
    """Per (kind, param, policy): mean regret with SEM and the reference curves"""
    grouped = rows.groupby(["sequence_kind", "param", "policy"], sort=True)["regret"]
    summary = grouped.agg(mean_regret="mean", sem=lambda r: r.sem() if r.size > 1 else 0.0, count="size")
    summary = summary.reset_index()

    ftl = references.groupby(["sequence_kind", "param"], sort=True).agg(
        ftl_regret=("ftl_regret", "mean"), g_n=("g_n", "first")
    ).reset_index()
    summary = summary.merge(ftl, on=["sequence_kind", "param"], how="left")
    summary["two_ftl"] = 2.0 * summary["ftl_regret"]
    summary["ratio_ftl"] = COMPETITIVE_RATIO * summary["ftl_regret"]
    best = np.minimum(summary["ftl_regret"], summary["g_n"])
    summary["deterministic_bound"] = 2.0 * best + 1.0
    summary["randomized_bound"] = COMPETITIVE_RATIO * best + 1.0
    return summary


def summary_paths(output: str) -> Tuple[Path, Path]:
    path = Path(output)
    stem = path.with_suffix("")
    return stem.with_name(stem.name + ".summary.csv"), stem.with_name(stem.name + ".summary.json")


def cmd_sweep(cfg: ExperimentConfig) -> int:
    rows, summary = execute(cfg)
    output = Path(cfg.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    rows.to_csv(output, index=False, lineterminator="\n")

    csv_path, json_path = summary_paths(cfg.output)
    summary.to_csv(csv_path, index=False, lineterminator="\n")
    report = SweepSummary(config=cfg, rows=len(rows), groups=json.loads(summary.to_json(orient="records")))
    json_path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")

    print(f"wrote {len(rows)} rows to {output}")
    print(f"summary: {csv_path}, {json_path}")
    return 0
