"""Boundary precision/recall/F1, word recovery, and perfect-poem rate."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

from .corpus import BREAK, LEGAL_PATTERNS, GoldPoem, boundaries_of, pattern_of


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def _f1(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def word_spans(boundaries: str) -> list[tuple[int, int]]:
    """Half-open character spans of the words implied by *boundaries*."""
    spans, start = [], 0
    for k, d in enumerate(boundaries, start=1):
        if d == BREAK:
            spans.append((start, k))
            start = k
    spans.append((start, len(boundaries) + 1))
    return spans


@dataclass(frozen=True)
class LineTally:
    predicted_P: int = 0
    gold_P: int = 0
    correct_P: int = 0
    gold_words: int = 0
    recovered_words: int = 0
    lines: int = 0
    exact_lines: int = 0

    @property
    def line_exact(self) -> bool:
        return self.exact_lines == self.lines

    @property
    def no_predictions(self) -> bool:
        """True when precision is undefined and reported as 0."""
        return self.predicted_P == 0

    @property
    def precision(self) -> float:
        return _ratio(self.correct_P, self.predicted_P)

    @property
    def recall(self) -> float:
        return _ratio(self.correct_P, self.gold_P)

    @property
    def f1(self) -> float:
        return _f1(self.precision, self.recall)

    @property
    def word_recovery(self) -> float:
        return _ratio(self.recovered_words, self.gold_words)

    def __add__(self, other: "LineTally") -> "LineTally":
        return LineTally(*(getattr(self, f.name) + getattr(other, f.name) for f in fields(self)))


def eval_line(pred: str, gold: str, gold_words: Sequence[str] | None = None) -> LineTally:
    """Compare one predicted N/P string against the gold one.

    A gold word counts as recovered only if the prediction places a break
    (or the line edge) on both sides of it and no break inside it.
    """
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {pred!r} vs {gold!r}")
    if gold_words is not None and boundaries_of(gold_words) != gold:
        raise ValueError(f"gold words {gold_words!r} disagree with {gold!r}")
    # pad with the line edges, which always count as breaks
    edged = BREAK + pred + BREAK
    gold_spans = word_spans(gold)
    recovered = sum(
        1 for i, j in gold_spans
        if edged[i] == BREAK and edged[j] == BREAK and BREAK not in edged[i + 1:j]
    )
    return LineTally(
        predicted_P=pred.count(BREAK),
        gold_P=gold.count(BREAK),
        correct_P=sum(1 for a, b in zip(pred, gold) if a == b == BREAK),
        gold_words=len(gold_spans),
        recovered_words=recovered,
        lines=1,
        exact_lines=int(pred == gold),
    )


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    word_recovery: float
    perfect_poem_rate: float
    line_count: int
    poem_count: int
    perfect_poems: int
    tally: LineTally

    @classmethod
    def from_tallies(cls, poem_tallies: Iterable[LineTally]) -> "EvalReport":
        total, poems, perfect = LineTally(), 0, 0
        for t in poem_tallies:
            total += t
            poems += 1
            perfect += t.line_exact
        return cls(total.precision, total.recall, total.f1, total.word_recovery,
                   _ratio(perfect, poems), total.lines, poems, perfect, total)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tally"] = asdict(self.tally)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        d = dict(d)
        d["tally"] = LineTally(**d["tally"])
        return cls(**d)


def eval_poem(pred: GoldPoem, gold: GoldPoem) -> LineTally:
    if pred.poem.id != gold.poem.id:
        raise ValueError(f"misaligned poems: predicted {pred.poem.id!r}, gold {gold.poem.id!r}")
    if pred.poem.lines != gold.poem.lines:
        raise ValueError(f"poem {gold.poem.id}: predicted text differs from gold")
    total = LineTally()
    for p, g in zip(pred.segmentation, gold.segmentation):
        total += eval_line(boundaries_of(p), boundaries_of(g), g)
    return total


def eval_corpus(pairs: Iterable[tuple[GoldPoem, GoldPoem]]) -> EvalReport:
    """Micro-averaged scores over aligned (predicted, gold) poems."""
    return EvalReport.from_tallies(eval_poem(p, g) for p, g in pairs)


def align(predicted: Sequence[GoldPoem], gold: Sequence[GoldPoem]) -> list[tuple[GoldPoem, GoldPoem]]:
    """Pair predictions with gold poems by id, keeping gold order."""
    by_id = {p.poem.id: p for p in predicted}
    pairs = []
    for g in gold:
        if g.poem.id not in by_id:
            raise ValueError(f"no prediction for poem {g.poem.id!r}")
        pairs.append((by_id[g.poem.id], g))
    return pairs


def filter_conforming(gold: Iterable[GoldPoem]) -> list[GoldPoem]:
    """Keep poems of eight lines that all follow one of the four regulated patterns."""
    kept = []
    for g in gold:
        if len(g.segmentation) != 8:
            continue
        if all(pattern_of(w) in LEGAL_PATTERNS.get(sum(map(len, w)), ())
               for w in g.segmentation):
            kept.append(g)
    return kept


# -- rendering ----------------------------------------------------------------

TABLE_COLUMNS = ("strategy", "dataset", "F1", "WR", "PSP")


def _pct(x: float) -> str:
    return f"{100 * x:.1f}"


def report_row(strategy: str, dataset: str, report: EvalReport) -> tuple[str, ...]:
    return (strategy, dataset, _pct(report.f1), _pct(report.word_recovery),
            _pct(report.perfect_poem_rate))


def render_tsv(rows: Iterable[tuple[str, ...]]) -> str:
    out = ["\t".join(TABLE_COLUMNS)]
    out.extend("\t".join(row) for row in rows)
    return "\n".join(out) + "\n"


def render_text(strategy: str, dataset: str, report: EvalReport) -> str:
    t = report.tally
    lines = [
        f"strategy   {strategy}",
        f"dataset    {dataset}",
        f"poems      {report.poem_count} ({report.perfect_poems} perfect)",
        f"lines      {report.line_count} ({t.exact_lines} exact)",
        f"precision  {_pct(report.precision)}%  ({t.correct_P}/{t.predicted_P})",
        f"recall     {_pct(report.recall)}%  ({t.correct_P}/{t.gold_P})",
        f"F1         {_pct(report.f1)}%",
        f"WR         {_pct(report.word_recovery)}%  ({t.recovered_words}/{t.gold_words})",
        f"PSP        {_pct(report.perfect_poem_rate)}%",
    ]
    return "\n".join(lines) + "\n"


def render_grid(entries: Sequence[tuple[str, str, EvalReport]]) -> str:
    """Strategies as rows, datasets as column groups of F1/WR/PSP."""
    strategies = list(dict.fromkeys(s for s, _, _ in entries))
    datasets = list(dict.fromkeys(d for _, d, _ in entries))
    cell = {(s, d): r for s, d, r in entries}
    header = ["strategy"] + [f"{d}:{m}" for d in datasets for m in TABLE_COLUMNS[2:]]
    out = ["\t".join(header)]
    for s in strategies:
        row = [s]
        for d in datasets:
            r = cell.get((s, d))
            row += list(report_row(s, d, r)[2:]) if r else ["-"] * 3
        out.append("\t".join(row))
    return "\n".join(out) + "\n"


def dump_report(strategy: str, dataset: str, report: EvalReport) -> str:
    return json.dumps({"strategy": strategy, "dataset": dataset, "report": report.to_dict()},
                      ensure_ascii=False, sort_keys=True, indent=1) + "\n"


def load_report(text: str) -> tuple[str, str, EvalReport]:
    d = json.loads(text)
    return d["strategy"], d["dataset"], EvalReport.from_dict(d["report"])
