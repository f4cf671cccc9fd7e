"""Weighted-PMI word segmentation for regulated Tang verse."""

__version__ = "0.1.0"

from .corpus import (
    GoldPoem,
    Poem,
    boundaries_of,
    filter_by_author,
    parse_corpus,
    parse_gold,
    pattern_of,
    pattern_stats,
)
from .counting import WeightConfig, WeightedCounts, accumulate_line, count_corpus, merge
from .evaluate import EvalReport, LineTally, eval_corpus, eval_line, filter_conforming
from .pmi import PmiModel, SmoothingConfig, Split, choose_split, pmi, train
from .segmenter import (
    LineDecision,
    SegmenterConfig,
    decisions_to_segmented,
    segment_line_pmi,
    segment_poem,
)
