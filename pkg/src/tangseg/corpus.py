"""Reading, validating and describing poem corpora.

Two on-disk formats share one JSON Lines shape (``id``, ``author``,
``title``, ``lines``).  In an unsegmented corpus each line string is the
bare character sequence; in a gold file the words of a line are joined by
a single ASCII space.

A character is one Unicode scalar value, i.e. one item of a Python ``str``.
Segmentations are carried around in two equivalent forms: a tuple of words,
and a boundary string of ``N``/``P`` decisions, one per gap between
adjacent characters.
"""

from __future__ import annotations

import json
import sys
from collections import Counter
from dataclasses import dataclass
from typing import IO, Iterable, NamedTuple, Sequence

LINE_LENGTHS = (5, 7)
OCTAVE_LINES = 8

#: The four patterns a regulated line is expected to follow, keyed by line length.
#: The first entry of each pair ends in a single-character word.
LEGAL_PATTERNS = {5: ("2-2-1", "2-1-2"), 7: ("2-2-2-1", "2-2-1-2")}

#: Authors of the expert-segmented test poems; keep them out of training data.
TEST_POETS = ("元稹", "李商隱", "李白", "杜牧", "杜甫", "白居易", "韋應物")

NO_BREAK = "N"
BREAK = "P"


class CorpusError(ValueError):
    """Fatal problem with a corpus source (bad encoding, unreadable input)."""


@dataclass(frozen=True)
class Diagnostic:
    record_id: str
    reason: str

    def __str__(self):
        return f"{self.record_id}\t{self.reason}"


@dataclass(frozen=True)
class Poem:
    id: str
    author: str
    title: str
    lines: tuple[str, ...]

    @property
    def line_length(self) -> int:
        return len(self.lines[0]) if self.lines else 0

    @property
    def form(self) -> str:
        return {5: "pentametric", 7: "heptametric"}.get(self.line_length, "irregular")

    @property
    def is_octave(self) -> bool:
        return len(self.lines) == OCTAVE_LINES


class GoldPoem(NamedTuple):
    """A poem together with one word tuple per line."""

    poem: Poem
    segmentation: tuple[tuple[str, ...], ...]

    @property
    def id(self) -> str:
        return self.poem.id

    def boundaries(self) -> list[str]:
        return [boundaries_of(words) for words in self.segmentation]


def validate_lines(lines: Sequence[str], octave: bool = False) -> str | None:
    """Return the reason *lines* cannot form a poem, or None if they can."""
    if not lines:
        return "poem has no lines"
    lengths = {len(line) for line in lines}
    if len(lengths) > 1:
        return "mixed line lengths " + ",".join(str(n) for n in sorted(lengths))
    (length,) = lengths
    if length not in LINE_LENGTHS:
        return f"line length {length} not in {{5,7}}"
    if octave and len(lines) != OCTAVE_LINES:
        return f"expected {OCTAVE_LINES} lines, found {len(lines)}"
    return None


def _decode(source) -> str:
    if isinstance(source, str):
        return source
    if hasattr(source, "read"):
        source = source.read()
        if isinstance(source, str):
            return source
    try:
        return bytes(source).decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusError(f"malformed UTF-8 at byte offset {e.start}") from e


def _records(text: str):
    """Yield (record_id, record_dict or None, error) for each non-blank line."""
    for lineno, raw in enumerate(text.split("\n"), start=1):
        if not raw.strip():
            continue
        fallback = f"line{lineno}"
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            yield fallback, None, f"invalid JSON: {e.msg}"
            continue
        if not isinstance(obj, dict):
            yield fallback, None, "record is not a JSON object"
            continue
        rid = obj.get("id", fallback)
        if not isinstance(rid, str):
            rid = str(rid)
        lines = obj.get("lines")
        if not isinstance(lines, list) or not all(isinstance(s, str) for s in lines):
            yield rid, None, "field 'lines' must be an array of strings"
            continue
        for field in ("author", "title"):
            if not isinstance(obj.get(field, ""), str):
                yield rid, None, f"field '{field}' must be a string"
                break
        else:
            yield rid, obj, None


def _make_poem(rid: str, obj: dict, lines: Sequence[str]) -> Poem:
    return Poem(rid, obj.get("author", ""), obj.get("title", ""), tuple(lines))


def parse_corpus(source, octave: bool = False) -> tuple[list[Poem], list[Diagnostic]]:
    """Parse an unsegmented JSON Lines corpus.

    ``source`` may be bytes, a binary file object, or already-decoded text.
    Training corpora accept any number of lines per poem; pass
    ``octave=True`` to require exactly eight.  Records that fail validation
    are returned as diagnostics rather than poems.
    """
    text = _decode(source)
    poems, diagnostics = [], []
    for rid, obj, error in _records(text):
        if error is None:
            lines = obj["lines"]
            if any(ch.isspace() for line in lines for ch in line):
                error = "unsegmented line contains whitespace"
            else:
                error = validate_lines(lines, octave)
        if error is not None:
            diagnostics.append(Diagnostic(rid, error))
        else:
            poems.append(_make_poem(rid, obj, lines))
    return poems, diagnostics


def parse_gold(source, octave: bool = False) -> tuple[list[GoldPoem], list[Diagnostic]]:
    """Parse a gold file whose line strings hold space-separated words."""
    text = _decode(source)
    gold, diagnostics = [], []
    for rid, obj, error in _records(text):
        if error is not None:
            diagnostics.append(Diagnostic(rid, error))
            continue
        segmentation = []
        for n, line in enumerate(obj["lines"], start=1):
            words = line.split(" ")
            if any(not w for w in words):
                error = f"line {n}: empty word"
                break
            if any(ch.isspace() for w in words for ch in w):
                error = f"line {n}: whitespace other than a single space"
                break
            segmentation.append(tuple(words))
        else:
            raw = ["".join(words) for words in segmentation]
            error = validate_lines(raw, octave)
        if error is not None:
            diagnostics.append(Diagnostic(rid, error))
            continue
        gold.append(GoldPoem(_make_poem(rid, obj, raw), tuple(segmentation)))
    return gold, diagnostics


def poem_record(poem: Poem, segmentation: Iterable[Sequence[str]] | None = None) -> str:
    """Serialize one poem as a JSON Lines record (without trailing newline)."""
    if segmentation is None:
        lines = list(poem.lines)
    else:
        lines = [" ".join(words) for words in segmentation]
    obj = {"id": poem.id, "author": poem.author, "title": poem.title, "lines": lines}
    return json.dumps(obj, ensure_ascii=False)


def write_corpus(poems: Iterable[Poem], out: IO[str]) -> None:
    for poem in poems:
        out.write(poem_record(poem) + "\n")


def write_gold(gold: Iterable[GoldPoem], out: IO[str]) -> None:
    for poem, segmentation in gold:
        out.write(poem_record(poem, segmentation) + "\n")


def report_diagnostics(diagnostics: Iterable[Diagnostic], stream=None) -> None:
    stream = stream or sys.stderr
    for d in diagnostics:
        stream.write(f"{d}\n")


# -- segmentation forms -------------------------------------------------------


def boundaries_of(words: Sequence[str]) -> str:
    """N/P decisions for the gaps of the line spelled by *words*.

    >>> boundaries_of(["AB", "CD", "EF", "G"])
    'NPNPNP'
    """
    out = []
    for i, word in enumerate(words):
        out.append(NO_BREAK * (len(word) - 1))
        if i < len(words) - 1:
            out.append(BREAK)
    return "".join(out)


def words_from_boundaries(line: str, boundaries: str) -> tuple[str, ...]:
    """Split *line* at every ``P`` in *boundaries*; inverse of :func:`boundaries_of`."""
    if len(boundaries) != len(line) - 1:
        raise ValueError(
            f"{len(boundaries)} decisions for a line of {len(line)} characters"
        )
    words, start = [], 0
    for k, decision in enumerate(boundaries, start=1):
        if decision == BREAK:
            words.append(line[start:k])
            start = k
        elif decision != NO_BREAK:
            raise ValueError(f"invalid decision {decision!r}")
    words.append(line[start:])
    return tuple(words)


def pattern_of(words: Sequence[str]) -> str:
    """Word-length pattern label, e.g. ``"2-2-1"``."""
    return "-".join(str(len(w)) for w in words)


def pattern_lengths(label: str) -> tuple[int, ...]:
    return tuple(int(n) for n in label.split("-"))


def boundaries_of_pattern(label: str) -> str:
    return boundaries_of(["x" * n for n in pattern_lengths(label)])


def is_legal_pattern(label: str) -> bool:
    return any(label in pair for pair in LEGAL_PATTERNS.values())


# -- statistics and filtering -------------------------------------------------


@dataclass(frozen=True)
class PatternRow:
    pattern: str
    count: int
    percentage: float

    @property
    def line_length(self) -> int:
        return sum(pattern_lengths(self.pattern))


def _round_to_total(values: Sequence[float], total: float, places: int = 1) -> list[float]:
    # largest-remainder rounding, so the rendered column adds up exactly
    scale = 10**places
    scaled = [v * scale for v in values]
    floors = [int(s) for s in scaled]
    short = round(total * scale) - sum(floors)
    order = sorted(range(len(values)), key=lambda i: (floors[i] - scaled[i], i))
    for i in order[: max(short, 0)]:
        floors[i] += 1
    return [f / scale for f in floors]


def pattern_stats(gold: Iterable[GoldPoem]) -> list[PatternRow]:
    """Frequency of each word-length pattern over all lines of *gold*.

    Percentages are relative to the total line count and rounded to one
    decimal place so that they sum to exactly 100.0.  Rows are grouped by
    line length (shorter first) and sorted by descending count within each
    group.
    """
    counts = Counter(pattern_of(words) for g in gold for words in g.segmentation)
    total = sum(counts.values())
    if not total:
        return []
    keys = sorted(counts, key=lambda p: (sum(pattern_lengths(p)), -counts[p], p))
    pcts = _round_to_total([100.0 * counts[k] / total for k in keys], 100.0)
    return [PatternRow(k, counts[k], pct) for k, pct in zip(keys, pcts)]


def format_pattern_stats(rows: Sequence[PatternRow]) -> str:
    out = ["pattern\tfrequency\tpercentage"]
    for row in rows:
        out.append(f"{row.pattern}\t{row.count}\t{row.percentage:.1f}%")
    return "\n".join(out) + "\n"


def filter_by_author(poems: Iterable[Poem], excluded: Iterable[str]) -> list[Poem]:
    excluded = set(excluded)
    return [p for p in poems if p.author not in excluded]


def strip_gold(gold: Iterable[GoldPoem]) -> list[Poem]:
    return [g.poem for g in gold]
