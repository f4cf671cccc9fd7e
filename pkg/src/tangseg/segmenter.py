"""Pattern-constrained line segmentation and the random baselines."""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .corpus import (
    BREAK,
    LEGAL_PATTERNS,
    NO_BREAK,
    GoldPoem,
    Poem,
    boundaries_of_pattern,
    words_from_boundaries,
)
from .pmi import Split, choose_split

MODES = ("completely_random", "pattern_random", "pmi", "pmi_parallel")
DEFAULT_COUPLETS = ((3, 4), (5, 6))


@dataclass(frozen=True)
class SegmenterConfig:
    mode: str = "pmi"
    rng_seed: int = 0
    parallel_couplets: tuple[tuple[int, int], ...] = DEFAULT_COUPLETS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if not 0 <= int(self.rng_seed) < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")
        couplets = tuple((int(i), int(j)) for i, j in self.parallel_couplets)
        seen = [k for pair in couplets for k in pair]
        if any(not 1 <= k <= 8 for k in seen) or len(set(seen)) != len(seen):
            raise ValueError(f"couplet indices must be disjoint and within 1..8: {couplets}")
        object.__setattr__(self, "parallel_couplets", couplets)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "rng_seed": int(self.rng_seed),
                "parallel_couplets": [list(c) for c in self.parallel_couplets]}


@dataclass(frozen=True)
class LineDecision:
    boundaries: str
    pattern: str
    margin: float = field(default=0.0)


def _decision(boundaries: str, margin: float = 0.0) -> LineDecision:
    lengths, run = [], 1
    for d in boundaries:
        if d == BREAK:
            lengths.append(run)
            run = 1
        else:
            run += 1
    lengths.append(run)
    return LineDecision(boundaries, "-".join(map(str, lengths)), margin)


def _pattern_decision(pattern: str, margin: float = 0.0) -> LineDecision:
    return LineDecision(boundaries_of_pattern(pattern), pattern, margin)


def line_margin(model, line: str) -> float:
    """PMI of the pair closing a -2-1 pattern minus that of the -1-2 pattern."""
    x, y, z = line[-3:]
    return model.pmi(x, y) - model.pmi(y, z)


def segment_line_pmi(model, line: str) -> LineDecision:
    """Choose between the two legal patterns of *line* from its last three characters.

    For ``ABCDE`` the contest is PMI(CD) against PMI(DE); for ``ABCDEFG`` it is
    PMI(EF) against PMI(FG).  The first two words are fixed by the patterns.
    """
    n = len(line)
    if n not in LEGAL_PATTERNS:
        raise ValueError(f"line length {n} not in {{5,7}}: {line!r}")
    ends_single, ends_pair = LEGAL_PATTERNS[n]
    split = choose_split(model, *line[-3:])
    pattern = ends_single if split is Split.XY_Z else ends_pair
    return _pattern_decision(pattern, line_margin(model, line))


def poem_rng(seed: int, poem_id: str) -> np.random.Generator:
    """Generator seeded from (seed, poem id), independent of processing order."""
    return np.random.default_rng([int(seed), zlib.crc32(poem_id.encode("utf-8"))])


def segment_poem(model, poem: Poem, config: SegmenterConfig | None = None) -> list[LineDecision]:
    config = config or SegmenterConfig()
    mode = config.mode
    if mode == "completely_random":
        rng = poem_rng(config.rng_seed, poem.id)
        out = []
        for line in poem.lines:
            bits = rng.integers(0, 2, size=len(line) - 1)
            out.append(_decision("".join(BREAK if b else NO_BREAK for b in bits)))
        return out
    if mode == "pattern_random":
        rng = poem_rng(config.rng_seed, poem.id)
        return [_pattern_decision(LEGAL_PATTERNS[len(line)][int(rng.integers(0, 2))])
                for line in poem.lines]
    if model is None:
        raise ValueError(f"mode {mode} needs a trained model")
    decisions = [segment_line_pmi(model, line) for line in poem.lines]
    if mode == "pmi":
        return decisions
    if not poem.is_octave:
        raise ValueError(f"poem {poem.id}: parallel mode needs 8 lines, found {len(poem.lines)}")
    ends_single, ends_pair = LEGAL_PATTERNS[poem.line_length]
    for i, j in config.parallel_couplets:
        a, b = decisions[i - 1], decisions[j - 1]
        pattern = ends_single if a.margin + b.margin > 0 else ends_pair
        decisions[i - 1] = _pattern_decision(pattern, a.margin)
        decisions[j - 1] = _pattern_decision(pattern, b.margin)
    return decisions


def decisions_to_segmented(line: str, decision: LineDecision | str) -> tuple[str, ...]:
    boundaries = decision.boundaries if isinstance(decision, LineDecision) else decision
    return words_from_boundaries(line, boundaries)


def predicted_poem(poem: Poem, decisions: Sequence[LineDecision]) -> GoldPoem:
    """Package decisions for *poem* in the same shape as a gold record."""
    if len(decisions) != len(poem.lines):
        raise ValueError(f"poem {poem.id}: {len(decisions)} decisions for {len(poem.lines)} lines")
    return GoldPoem(poem, tuple(decisions_to_segmented(line, d)
                                for line, d in zip(poem.lines, decisions)))


def decision_rows(poem: Poem, decisions: Sequence[LineDecision]) -> list[str]:
    """Per-line TSV rows: poem id, line number, N/P string, pattern, margin."""
    return [f"{poem.id}\t{n}\t{d.boundaries}\t{d.pattern}\t{d.margin!r}"
            for n, d in enumerate(decisions, start=1)]
