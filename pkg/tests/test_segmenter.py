import itertools
from collections import Counter

import pytest

from tangseg.counting import count_corpus
from tangseg.pmi import train
from tangseg.segmenter import (
    LineDecision,
    SegmenterConfig,
    decision_rows,
    decisions_to_segmented,
    predicted_poem,
    segment_line_pmi,
    segment_poem,
)

from conftest import make_poem

LEGAL = {5: {"NPNP", "NPPN"}, 7: {"NPNPNP", "NPNPPN"}}


class Scorer:
    """Stand-in model returning fixed PMI values per pair (0 for anything else)."""

    def __init__(self, scores):
        self.scores = scores

    def pmi(self, a, b):
        return self.scores.get(a + b, 0.0)


class TestSegmentLine:
    def test_pentametric_221(self):
        d = segment_line_pmi(Scorer({"CD": 3.0, "DE": 1.0}), "ABCDE")
        assert d == LineDecision("NPNP", "2-2-1", 2.0)

    def test_heptametric_2212(self):
        d = segment_line_pmi(Scorer({"EF": 0.0, "FG": 2.0}), "ABCDEFG")
        assert d == LineDecision("NPNPPN", "2-2-1-2", -2.0)

    @pytest.mark.parametrize("line,expected", [("ABCDE", "2-1-2"), ("ABCDEFG", "2-2-1-2")])
    def test_tie_prefers_trailing_pair(self, line, expected):
        assert segment_line_pmi(Scorer({}), line).pattern == expected

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            segment_line_pmi(Scorer({}), "ABCDEF")

    def test_monotone_in_left_pair(self):
        for de in (-2.0, 0.0, 1.5):
            previous = None
            for cd in [x / 4 for x in range(-12, 13)]:
                p = segment_line_pmi(Scorer({"CD": cd, "DE": de}), "ABCDE").pattern
                if previous == "2-2-1":
                    assert p == "2-2-1"
                previous = p


class TestSegmentPoem:
    poem5 = make_poem("p5", ["ABCDE", "FGHIJ", "KLMNO", "PQRST",
                             "UVWXY", "abcde", "fghij", "klmno"])

    def test_pmi_mode_per_line(self):
        scorer = Scorer({"CD": 1.0, "MN": 2.0})
        decisions = segment_poem(scorer, self.poem5, SegmenterConfig("pmi"))
        assert [d.pattern for d in decisions] == ["2-2-1", "2-1-2", "2-2-1"] + ["2-1-2"] * 5

    def test_parallel_sum_rule(self):
        # lines 3 and 4: margins +1 and -3, sum -2 -> both take 2-1-2
        scorer = Scorer({"MN": 1.0, "ST": 3.0})
        plain = segment_poem(scorer, self.poem5, SegmenterConfig("pmi"))
        parallel = segment_poem(scorer, self.poem5, SegmenterConfig("pmi_parallel"))
        assert plain[2].pattern == "2-2-1" and plain[3].pattern == "2-1-2"
        assert parallel[2].pattern == parallel[3].pattern == "2-1-2"
        assert parallel[2].margin == 1.0 and parallel[3].margin == -3.0

    def test_parallel_positive_sum(self):
        scorer = Scorer({"MN": 4.0, "ST": 3.0})
        parallel = segment_poem(scorer, self.poem5, SegmenterConfig("pmi_parallel"))
        assert parallel[2].pattern == parallel[3].pattern == "2-2-1"

    def test_parallel_agrees_outside_couplets(self):
        scorer = Scorer({"CD": 1.0, "MN": 0.5, "ST": -2.0, "XY": 1.0, "cd": -1.0, "no": 3.0})
        plain = segment_poem(scorer, self.poem5, SegmenterConfig("pmi"))
        parallel = segment_poem(scorer, self.poem5, SegmenterConfig("pmi_parallel"))
        for k in (0, 1, 6, 7):
            assert plain[k] == parallel[k]
        for i, j in ((2, 3), (4, 5)):
            assert parallel[i].pattern == parallel[j].pattern

    def test_parallel_custom_couplets(self):
        scorer = Scorer({"CD": 5.0})
        cfg = SegmenterConfig("pmi_parallel", parallel_couplets=((1, 2),))
        d = segment_poem(scorer, self.poem5, cfg)
        assert d[0].pattern == d[1].pattern == "2-2-1"

    def test_parallel_needs_octave(self):
        with pytest.raises(ValueError, match="8 lines"):
            segment_poem(Scorer({}), make_poem("s", ["ABCDE"] * 4), SegmenterConfig("pmi_parallel"))

    def test_pmi_mode_needs_model(self):
        with pytest.raises(ValueError):
            segment_poem(None, self.poem5, SegmenterConfig("pmi"))

    @pytest.mark.parametrize("mode", ["pattern_random", "pmi", "pmi_parallel"])
    @pytest.mark.parametrize("length", [5, 7])
    def test_only_legal_vectors(self, mode, length):
        model = train(count_corpus([make_poem("t", ["白日依山盡", "黃河入海流"]),
                                    make_poem("u", ["春眠不覺曉處聞", "夜來風雨聲花落"])]))
        for seed in range(20):
            poem = make_poem(f"x{seed}", [("白日依山盡黃河入" * 8)[k:k + length] for k in range(8)])
            for d in segment_poem(model, poem, SegmenterConfig(mode, seed)):
                assert d.boundaries in LEGAL[length]

    @pytest.mark.parametrize("mode", ["pattern_random", "completely_random"])
    def test_seeded_determinism(self, mode):
        cfg = SegmenterConfig(mode, rng_seed=2**63 + 5)
        first = segment_poem(None, self.poem5, cfg)
        assert segment_poem(None, self.poem5, cfg) == first
        other = [segment_poem(None, self.poem5, SegmenterConfig(mode, s)) for s in range(10)]
        assert any(o != first for o in other)

    def test_random_depends_on_poem_id_not_order(self):
        cfg = SegmenterConfig("pattern_random", 3)
        a = make_poem("a", self.poem5.lines)
        b = make_poem("b", self.poem5.lines)
        first = [segment_poem(None, p, cfg) for p in (a, b)]
        second = [segment_poem(None, p, cfg) for p in (b, a)][::-1]
        assert first == second

    def test_completely_random_uniform(self):
        # 16000 lines of length 5; each of the 16 vectors expected 1000 times
        cfg = SegmenterConfig("completely_random", 123)
        counts = Counter()
        for i in range(2000):
            poem = make_poem(f"c{i}", ["ABCDE"] * 8)
            counts.update(d.boundaries for d in segment_poem(None, poem, cfg))
        assert set(counts) == {"".join(b) for b in itertools.product("NP", repeat=4)}
        sigma = (16000 * (1 / 16) * (15 / 16)) ** 0.5
        for n in counts.values():
            assert abs(n - 1000) <= 3 * sigma

    def test_random_labels_match_vectors(self):
        for d in segment_poem(None, self.poem5, SegmenterConfig("completely_random", 9)):
            runs = [len(r) + 1 for r in d.boundaries.split("P")]
            assert d.pattern == "-".join(map(str, runs))
            assert d.margin == 0.0

    @pytest.mark.parametrize("couplets", [((0, 1),), ((3, 4), (4, 5)), ((2, 9),)])
    def test_bad_couplets(self, couplets):
        with pytest.raises(ValueError):
            SegmenterConfig("pmi_parallel", parallel_couplets=couplets)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            SegmenterConfig("greedy")


class TestDecisionsToSegmented:
    @pytest.mark.parametrize("line,vector,words", [
        ("ABCDE", "NPNP", ("AB", "CD", "E")),
        ("ABCDE", "NNNN", ("ABCDE",)),
        ("ABCDEFG", "NPNPPN", ("AB", "CD", "E", "FG")),
    ])
    def test_examples(self, line, vector, words):
        assert decisions_to_segmented(line, vector) == words
        assert decisions_to_segmented(line, LineDecision(vector, "")) == words

    def test_predicted_poem_and_rows(self):
        poem = make_poem("q", ["ABCDE", "FGHIJKL"])
        decisions = [LineDecision("NPNP", "2-2-1", 0.5), LineDecision("NPNPPN", "2-2-1-2", -1.0)]
        gold = predicted_poem(poem, decisions)
        assert gold.segmentation == (("AB", "CD", "E"), ("FG", "HI", "J", "KL"))
        assert decision_rows(poem, decisions) == [
            "q\t1\tNPNP\t2-2-1\t0.5", "q\t2\tNPNPPN\t2-2-1-2\t-1.0"]
        with pytest.raises(ValueError):
            predicted_poem(poem, decisions[:1])
