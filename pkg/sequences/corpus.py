from dataclasses import dataclass
from typing import Iterable, List, Optional

from core.types import LossMatrix
from sequences.embedding import binary_to_losses
from sequences.generators import BinarySequence, gen_alternating, gen_bernoulli, gen_lead_change

BERNOULLI_GRID = tuple(round(0.05 * i, 2) for i in range(1, 11))


@dataclass
class CorpusEntry:
    kind: str
    param: float
    seed: Optional[int]
    sequence: BinarySequence

    @property
    def losses(self) -> LossMatrix:
        return binary_to_losses(self.sequence)

    @property
    def name(self) -> str:
        suffix = "" if self.seed is None else f"/seed={self.seed}"
        return f"{self.kind}({self.param:g}){suffix}"


def standard_corpus(
    n: int = 1000,
    p_values: Iterable[float] = BERNOULLI_GRID,
    seeds: Iterable[int] = range(10),
    c_values: Iterable[int] = range(1, 101),
    alternating: bool = True,
) -> List[CorpusEntry]:
    """Bernoulli(p) x seeds, lead-change sequences for every valid c, and the alternating sequence"""
    seeds = list(seeds)
    entries = [
        CorpusEntry("bernoulli", float(p), seed, gen_bernoulli(n, float(p), seed))
        for p in p_values
        for seed in seeds
    ]
    entries.extend(
        CorpusEntry("lead_change", float(c), None, gen_lead_change(n, int(c)))
        for c in c_values
        if 2 * c <= n
    )
    if alternating:
        entries.append(CorpusEntry("alternating", 0.0, None, gen_alternating(n)))
    return entries


def entries_of_kind(entries: List[CorpusEntry], kind: str) -> List[CorpusEntry]:
    return [e for e in entries if e.kind == kind]
