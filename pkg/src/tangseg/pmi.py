"""Smoothed probabilities and pointwise mutual information of character pairs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import IO, Iterable

from .counting import WeightedCounts, read_counts, write_counts


class Split(enum.Enum):
    XY_Z = "XY-Z"
    X_YZ = "X-YZ"


UNIGRAM_SOURCES = ("raw_char", "weighted_unigram")


@dataclass(frozen=True)
class SmoothingConfig:
    alpha: float = 1.0
    unigram_source: str = "raw_char"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.unigram_source not in UNIGRAM_SOURCES:
            raise ValueError(f"unigram_source must be one of {UNIGRAM_SOURCES}")
        object.__setattr__(self, "alpha", float(self.alpha))

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "unigram_source": self.unigram_source}


class PmiModel:
    """Additively smoothed character and bigram probabilities.

    With ``V`` the number of observed characters plus one shared slot for
    every unseen character::

        Pr(c)  = (count(c) + alpha) / (total_chars + alpha * V)
        Pr(ab) = (weight(ab) + alpha) / (total_bigram_weight + alpha * V**2)
        PMI(ab) = log2(Pr(ab) / (Pr(a) * Pr(b)))

    ``count`` is either the raw character frequency or the weighted
    single-character-word total, per ``SmoothingConfig.unigram_source``.
    """

    __slots__ = ("smoothing", "vocab_size", "_unigrams", "_bigrams",
                 "_unigram_total", "_bigram_total", "_counts")

    def __init__(self, counts: WeightedCounts, smoothing: SmoothingConfig | None = None):
        smoothing = smoothing or SmoothingConfig()
        if counts.total_char_count <= 0:
            raise ValueError("empty model")
        self.smoothing = smoothing
        self.vocab_size = len(counts.raw_char_counts) + 1
        if smoothing.unigram_source == "raw_char":
            unigrams = dict(counts.raw_char_counts)
            unigram_total = float(counts.total_char_count)
        else:
            unigrams = dict(counts.unigram_weights)
            unigram_total = counts.total_unigram_weight
        self._unigrams = MappingProxyType(unigrams)
        self._bigrams = MappingProxyType(dict(counts.bigram_weights))
        self._unigram_total = unigram_total
        self._bigram_total = counts.total_bigram_weight
        self._counts = counts

    def __setattr__(self, name, value):
        if hasattr(self, "_counts"):
            raise AttributeError("PmiModel is immutable")
        object.__setattr__(self, name, value)

    @property
    def counts(self) -> WeightedCounts:
        return self._counts

    @property
    def alpha(self) -> float:
        return self.smoothing.alpha

    def char_denominator(self) -> float:
        return self._unigram_total + self.alpha * self.vocab_size

    def bigram_denominator(self) -> float:
        return self._bigram_total + self.alpha * self.vocab_size ** 2

    def prob_char(self, c: str) -> float:
        return (self._unigrams.get(c, 0.0) + self.alpha) / self.char_denominator()

    def prob_unknown_char(self) -> float:
        return self.alpha / self.char_denominator()

    def prob_bigram(self, a: str, b: str) -> float:
        return (self._bigrams.get(a + b, 0.0) + self.alpha) / self.bigram_denominator()

    def pmi(self, a: str, b: str) -> float:
        return math.log2(self.prob_bigram(a, b) / (self.prob_char(a) * self.prob_char(b)))

    def observed_chars(self) -> frozenset:
        return self._counts.vocab

    def bigram_scores(self) -> dict[str, float]:
        """PMI of every observed bigram, keyed by the two-character string."""
        return {pair: self.pmi(pair[0], pair[1]) for pair in sorted(self._bigrams)}


def train(counts: WeightedCounts, smoothing: SmoothingConfig | None = None) -> PmiModel:
    return PmiModel(counts, smoothing)


def pmi(model: PmiModel, a: str, b: str) -> float:
    return model.pmi(a, b)


def choose_split(model, x: str, y: str, z: str) -> Split:
    """Group the middle character with the side of higher PMI; ties go to X-YZ.

    *model* is anything with a ``pmi(a, b)`` method.
    """
    if model.pmi(x, y) > model.pmi(y, z):
        return Split.XY_Z
    return Split.X_YZ


# -- model files --------------------------------------------------------------


def save_model(model: PmiModel, out: IO[str]) -> None:
    c = model.counts
    out.write(f"#alpha\t{model.alpha!r}\n")
    out.write(f"#V\t{model.vocab_size}\n")
    out.write(f"#unigram_source\t{model.smoothing.unigram_source}\n")
    out.write(f"#total_bigram_weight\t{c.total_bigram_weight!r}\n")
    out.write(f"#total_unigram_weight\t{c.total_unigram_weight!r}\n")
    out.write(f"#total_char_count\t{c.total_char_count}\n")
    write_counts(c, out)


def load_model(rows: Iterable[str]) -> PmiModel:
    header, body = {}, []
    for row in rows:
        if row.startswith("#"):
            key, _, value = row[1:].rstrip("\n").partition("\t")
            header[key] = value
        else:
            body.append(row)
    try:
        smoothing = SmoothingConfig(float(header["alpha"]), header["unigram_source"])
    except KeyError as e:
        raise ValueError(f"model file lacks header field {e.args[0]}") from None
    model = PmiModel(read_counts(body), smoothing)
    if "V" in header and int(header["V"]) != model.vocab_size:
        raise ValueError("model header V does not match counts")
    return model
