"""Synthetic regulated-octave corpora for desk-scale experiments.

Two character sources are available.  With no lexicon, every character is
drawn uniformly from the alphabet, which is what the random baselines
need.  With a planted lexicon, two-character words come from a fixed list
and single-character words from the whole alphabet, so that bigram
statistics carry real signal about word boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import LEGAL_PATTERNS, GoldPoem, Poem, pattern_lengths
from .counting import TABLE1_FREQUENCIES

CJK_START = 0x4E00
DEFAULT_ALPHABET_SIZE = 3000


def cjk_alphabet(size: int = DEFAULT_ALPHABET_SIZE) -> str:
    if not 1 <= size <= 20000:
        raise ValueError("alphabet size must be within 1..20000")
    return "".join(chr(CJK_START + i) for i in range(size))


def parse_mix(text: str) -> tuple[tuple[float, float], tuple[float, float]]:
    """Pattern mix from ``uniform``, ``table1`` or four comma-separated weights.

    Weights are normalised per line length, in the order
    2-2-1, 2-1-2, 2-2-2-1, 2-2-1-2.
    """
    text = text.strip()
    if text == "uniform":
        values = [1, 1, 1, 1]
    elif text == "table1":
        values = [*TABLE1_FREQUENCIES[5], *TABLE1_FREQUENCIES[7]]
    else:
        values = [float(x) for x in text.split(",")]
        if len(values) != 4 or min(values) < 0:
            raise ValueError("pattern mix needs four non-negative weights")

    def norm(a, b):
        if a + b <= 0:
            raise ValueError("pattern mix weights for a line length sum to zero")
        return (a / (a + b), b / (a + b))

    return norm(*values[:2]), norm(*values[2:])


@dataclass(frozen=True)
class SynthConfig:
    poems_5: int = 0
    poems_7: int = 0
    mix: str = "uniform"
    seed: int = 0
    alphabet_size: int = DEFAULT_ALPHABET_SIZE
    lexicon_size: int = 0
    lexicon_seed: int = 0
    parallel: bool = False
    authors: int = 1
    author_prefix: str = "synth"
    id_prefix: str = "p"

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _lexicon(rng: np.random.Generator, alphabet: str, size: int) -> list[str]:
    words: dict[str, None] = {}
    while len(words) < size:
        a, b = rng.choice(len(alphabet), size=2, replace=False)
        words.setdefault(alphabet[a] + alphabet[b])
    return list(words)


def synthesize(config: SynthConfig) -> list[GoldPoem]:
    """Generate ``poems_5`` pentametric then ``poems_7`` heptametric octaves."""
    rng = np.random.default_rng(config.seed)
    alphabet = cjk_alphabet(config.alphabet_size)
    lexicon = None
    if config.lexicon_size:
        # seeded apart from the poems so training and test corpora share words
        lexicon = _lexicon(np.random.default_rng(config.lexicon_seed), alphabet,
                           config.lexicon_size)
    mixes = dict(zip((5, 7), parse_mix(config.mix)))

    def word(size: int) -> str:
        if lexicon is not None and size == 2:
            return lexicon[rng.integers(len(lexicon))]
        return "".join(alphabet[i] for i in rng.integers(len(alphabet), size=size))

    out = []
    for length, count in ((5, config.poems_5), (7, config.poems_7)):
        legal, weights = LEGAL_PATTERNS[length], mixes[length]
        for _ in range(count):
            patterns = [legal[int(rng.random() >= weights[0])] for _ in range(8)]
            if config.parallel:
                patterns[3] = patterns[2]
                patterns[5] = patterns[4]
            segmentation = tuple(tuple(word(n) for n in pattern_lengths(p)) for p in patterns)
            n = len(out)
            poem = Poem(
                id=f"{config.id_prefix}{n:05d}",
                author=f"{config.author_prefix}{n % max(config.authors, 1)}",
                title="",
                lines=tuple("".join(words) for words in segmentation),
            )
            out.append(GoldPoem(poem, segmentation))
    return out
