"""Weighted unigram/bigram counts gathered under competing line patterns.

Each unsegmented line could follow either of the two regulated patterns for
its length.  Rather than pick one, every pattern contributes its words with
the pattern's prior as weight: two-character words feed the bigram table and
one-character words feed the weighted unigram table.  Adjacent pairs that
straddle a word boundary under a pattern receive ``prior * epsilon``.

Raw character frequencies (one per occurrence, regardless of position) are
kept alongside, since the PMI denominator may use either estimate.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .corpus import LEGAL_PATTERNS, Poem, pattern_lengths

# Line counts from the reference pattern table: (2-2-1, 2-1-2) and (2-2-2-1, 2-2-1-2).
TABLE1_FREQUENCIES = {5: (4861, 6317), 7: (3009, 4568)}


@dataclass(frozen=True)
class WeightConfig:
    """Pattern priors per line length plus the cross-boundary bigram weight.

    ``priors_5`` weighs (2-2-1, 2-1-2); ``priors_7`` weighs (2-2-2-1, 2-2-1-2).
    """

    priors_5: tuple[float, float] = (0.5, 0.5)
    priors_7: tuple[float, float] = (0.5, 0.5)
    epsilon: float = 0.0

    def __post_init__(self):
        for name in ("priors_5", "priors_7"):
            pair = tuple(float(x) for x in getattr(self, name))
            if len(pair) != 2 or min(pair) < 0 or abs(sum(pair) - 1.0) > 1e-9:
                raise ValueError(f"{name} must be two non-negative weights summing to 1, got {pair}")
            object.__setattr__(self, name, pair)
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be non-negative")
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @classmethod
    def table1(cls, epsilon: float = 0.0) -> "WeightConfig":
        """Priors proportional to the observed frequencies of the four patterns."""
        def norm(pair):
            a, b = pair
            return (a / (a + b), b / (a + b))
        return cls(norm(TABLE1_FREQUENCIES[5]), norm(TABLE1_FREQUENCIES[7]), epsilon)

    def priors(self, length: int) -> tuple[float, float]:
        if length == 5:
            return self.priors_5
        if length == 7:
            return self.priors_7
        raise ValueError(f"line length {length} not in {{5,7}}")

    def weighted_patterns(self, length: int):
        """(pattern, prior) for the two patterns legal at *length*."""
        return list(zip(LEGAL_PATTERNS[length], self.priors(length)))

    def to_dict(self) -> dict:
        return {"priors_5": list(self.priors_5), "priors_7": list(self.priors_7),
                "epsilon": self.epsilon}


@dataclass
class WeightedCounts:
    bigram_weights: dict = field(default_factory=lambda: defaultdict(float))
    unigram_weights: dict = field(default_factory=lambda: defaultdict(float))
    raw_char_counts: dict = field(default_factory=lambda: defaultdict(int))
    total_bigram_weight: float = 0.0
    total_unigram_weight: float = 0.0
    total_char_count: int = 0

    @property
    def vocab(self) -> frozenset:
        return frozenset(self.raw_char_counts)

    def add_bigram(self, pair: str, weight: float) -> None:
        if weight:
            self.bigram_weights[pair] += weight
            self.total_bigram_weight += weight

    def add_unigram(self, char: str, weight: float) -> None:
        if weight:
            self.unigram_weights[char] += weight
            self.total_unigram_weight += weight

    def check(self, rtol: float = 1e-6) -> None:
        """Raise AssertionError if the running totals drifted from the tables."""
        def close(a, b):
            return abs(a - b) <= rtol * max(abs(a), abs(b), 1.0)
        assert close(self.total_bigram_weight, math.fsum(self.bigram_weights.values()))
        assert close(self.total_unigram_weight, math.fsum(self.unigram_weights.values()))
        assert self.total_char_count == sum(self.raw_char_counts.values())
        assert all(w >= 0 for w in self.bigram_weights.values())
        assert all(w >= 0 for w in self.unigram_weights.values())

    def __eq__(self, other):
        if not isinstance(other, WeightedCounts):
            return NotImplemented
        return (dict(self.bigram_weights) == dict(other.bigram_weights)
                and dict(self.unigram_weights) == dict(other.unigram_weights)
                and dict(self.raw_char_counts) == dict(other.raw_char_counts)
                and self.total_char_count == other.total_char_count)


def accumulate_line(line: str, config: WeightConfig, counts: WeightedCounts) -> WeightedCounts:
    """Add the contribution of one unsegmented line to *counts* (in place)."""
    n = len(line)
    if n not in (5, 7):
        raise ValueError(f"line length {n} not in {{5,7}}: {line!r}")
    # per gap: weight of the pair if it lies inside a word, else prior*epsilon
    gap_weight = [0.0] * (n - 1)
    for pattern, prior in config.weighted_patterns(n):
        start = 0
        for size in pattern_lengths(pattern):
            end = start + size
            if size == 1:
                counts.add_unigram(line[start], prior)
            for k in range(start, end - 1):
                gap_weight[k] += prior
            if end < n:
                gap_weight[end - 1] += prior * config.epsilon
            start = end
    for k, w in enumerate(gap_weight):
        counts.add_bigram(line[k:k + 2], w)
    for ch in line:
        counts.raw_char_counts[ch] += 1
    counts.total_char_count += n
    return counts


def count_corpus(poems: Iterable[Poem], config: WeightConfig | None = None) -> WeightedCounts:
    config = config or WeightConfig()
    counts = WeightedCounts()
    for poem in poems:
        for line in poem.lines:
            try:
                accumulate_line(line, config, counts)
            except ValueError as e:
                raise ValueError(f"poem {poem.id}: {e}") from e
    return counts


def merge(a: WeightedCounts, b: WeightedCounts) -> WeightedCounts:
    """Pointwise sum of two count tables; neither argument is modified."""
    out = WeightedCounts()
    for src in (a, b):
        for k, w in src.bigram_weights.items():
            out.bigram_weights[k] += w
        for k, w in src.unigram_weights.items():
            out.unigram_weights[k] += w
        for k, c in src.raw_char_counts.items():
            out.raw_char_counts[k] += c
    out.total_bigram_weight = a.total_bigram_weight + b.total_bigram_weight
    out.total_unigram_weight = a.total_unigram_weight + b.total_unigram_weight
    out.total_char_count = a.total_char_count + b.total_char_count
    return out


# -- snapshot files -----------------------------------------------------------
#
# One row per key, code-point ordered within each kind:
#   C <char> <raw count>      U <char> <weight>      B <pair> <weight>
# followed by totals rows  T bigram <w>,  T unigram <w>,  T chars <n>.
# Weights are written with repr() so a load reproduces them bit for bit.


def write_counts(counts: WeightedCounts, out: IO[str]) -> None:
    for ch in sorted(counts.raw_char_counts):
        out.write(f"C\t{ch}\t{counts.raw_char_counts[ch]}\n")
    for ch in sorted(counts.unigram_weights):
        out.write(f"U\t{ch}\t{counts.unigram_weights[ch]!r}\n")
    for pair in sorted(counts.bigram_weights):
        out.write(f"B\t{pair}\t{counts.bigram_weights[pair]!r}\n")
    out.write(f"T\tbigram\t{counts.total_bigram_weight!r}\n")
    out.write(f"T\tunigram\t{counts.total_unigram_weight!r}\n")
    out.write(f"T\tchars\t{counts.total_char_count}\n")


def read_counts(rows: Iterable[str]) -> WeightedCounts:
    counts = WeightedCounts()
    for n, row in enumerate(rows, start=1):
        row = row.rstrip("\n")
        if not row or row.startswith("#"):
            continue
        try:
            kind, key, value = row.split("\t")
            if kind == "C":
                counts.raw_char_counts[key] = int(value)
            elif kind == "U":
                counts.unigram_weights[key] = float(value)
            elif kind == "B":
                counts.bigram_weights[key] = float(value)
            elif kind == "T" and key == "bigram":
                counts.total_bigram_weight = float(value)
            elif kind == "T" and key == "unigram":
                counts.total_unigram_weight = float(value)
            elif kind == "T" and key == "chars":
                counts.total_char_count = int(value)
            else:
                raise ValueError(f"unknown row kind {kind!r}/{key!r}")
        except ValueError as e:
            raise ValueError(f"counts row {n}: {e}") from e
    counts.check()
    return counts


def parse_priors(text: str) -> WeightConfig:
    """Build a config from ``uniform``, ``table1`` or four comma-separated numbers."""
    text = text.strip()
    if text == "uniform":
        return WeightConfig()
    if text == "table1":
        return WeightConfig.table1()
    values: Sequence[float] = [float(x) for x in text.split(",")]
    if len(values) != 4:
        raise ValueError("priors need four numbers: 2-2-1,2-1-2,2-2-2-1,2-2-1-2")
    return WeightConfig(tuple(values[:2]), tuple(values[2:]))
