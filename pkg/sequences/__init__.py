from sequences.corpus import BERNOULLI_GRID, CorpusEntry, entries_of_kind, standard_corpus
from sequences.embedding import binary_to_losses
from sequences.generators import (
    BinarySequence,
    bits_from,
    gen_alternating,
    gen_bernoulli,
    gen_lead_change,
    gen_random_losses,
)
from sequences.io import load_bits, load_losses, save_bits, save_losses

__all__ = [
    "BERNOULLI_GRID",
    "BinarySequence",
    "CorpusEntry",
    "binary_to_losses",
    "bits_from",
    "entries_of_kind",
    "gen_alternating",
    "gen_bernoulli",
    "gen_lead_change",
    "gen_random_losses",
    "load_bits",
    "load_losses",
    "save_bits",
    "save_losses",
    "standard_corpus",
]
