import io
import random
from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangseg.counting import (
    WeightConfig,
    WeightedCounts,
    accumulate_line,
    count_corpus,
    merge,
    parse_priors,
    read_counts,
    write_counts,
)

from conftest import make_poem


def brute_force(line, config):
    """Enumerate both legal patterns, emitting each pattern's units at its prior."""
    patterns = {5: [(2, 2, 1), (2, 1, 2)], 7: [(2, 2, 2, 1), (2, 2, 1, 2)]}[len(line)]
    priors = config.priors(len(line))
    bigrams, unigrams = defaultdict(float), defaultdict(float)
    for sizes, prior in zip(patterns, priors):
        cuts = [0]
        for s in sizes:
            cuts.append(cuts[-1] + s)
        for a, b in zip(cuts, cuts[1:]):
            word = line[a:b]
            if len(word) == 1:
                unigrams[word] += prior
            else:
                bigrams[word] += prior
        for c in cuts[1:-1]:
            bigrams[line[c - 1:c + 1]] += prior * config.epsilon
    return ({k: v for k, v in bigrams.items() if v}, {k: v for k, v in unigrams.items() if v})


def tables_close(a, b, tol=1e-9):
    keys = set(a) | set(b)
    return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= tol for k in keys)


class TestWeightConfig:
    def test_defaults_uniform(self):
        c = WeightConfig()
        assert c.priors_5 == (0.5, 0.5) and c.priors_7 == (0.5, 0.5) and c.epsilon == 0.0

    def test_table1_preset(self):
        c = WeightConfig.table1()
        assert c.priors_5[0] == pytest.approx(0.435, abs=1e-3)
        assert c.priors_7[0] == pytest.approx(0.397, abs=1e-3)
        assert sum(c.priors_5) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("kwargs", [
        {"priors_5": (0.6, 0.6)}, {"priors_7": (-0.1, 1.1)}, {"epsilon": -1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            WeightConfig(**kwargs)

    def test_parse_priors(self):
        assert parse_priors("uniform") == WeightConfig()
        assert parse_priors("table1") == WeightConfig.table1()
        assert parse_priors("1,0,0.25,0.75").priors_7 == (0.25, 0.75)
        with pytest.raises(ValueError):
            parse_priors("0.5,0.5")


class TestAccumulateLine:
    def test_pentametric_uniform(self):
        c = accumulate_line("ABCDE", WeightConfig(), WeightedCounts())
        assert dict(c.bigram_weights) == {"AB": 1.0, "CD": 0.5, "DE": 0.5}
        assert dict(c.unigram_weights) == {"C": 0.5, "E": 0.5}
        assert dict(c.raw_char_counts) == {ch: 1 for ch in "ABCDE"}

    def test_heptametric_uniform(self):
        c = accumulate_line("JKLMNOP", WeightConfig(), WeightedCounts())
        assert dict(c.bigram_weights) == {"JK": 1.0, "LM": 1.0, "NO": 0.5, "OP": 0.5}
        assert dict(c.unigram_weights) == {"N": 0.5, "P": 0.5}

    def test_degenerate_prior(self):
        c = accumulate_line("ABCDE", WeightConfig((1.0, 0.0)), WeightedCounts())
        assert dict(c.bigram_weights) == {"AB": 1.0, "CD": 1.0}
        assert dict(c.unigram_weights) == {"E": 1.0}

    def test_epsilon_weights_cross_pairs(self):
        c = accumulate_line("JKLMNOP", WeightConfig(priors_7=(0.25, 0.75), epsilon=0.1),
                            WeightedCounts())
        assert c.bigram_weights["KL"] == pytest.approx(0.1)
        assert c.bigram_weights["MN"] == pytest.approx(0.1)
        assert c.bigram_weights["NO"] == pytest.approx(0.25 + 0.75 * 0.1)
        assert c.bigram_weights["OP"] == pytest.approx(0.75 + 0.25 * 0.1)

    @pytest.mark.parametrize("line", ["ABCD", "ABCDEF", ""])
    def test_wrong_length(self, line):
        with pytest.raises(ValueError):
            accumulate_line(line, WeightConfig(), WeightedCounts())

    @settings(max_examples=200, deadline=None)
    @given(
        line=st.text(alphabet="ABCDEFG", min_size=5, max_size=7).filter(lambda s: len(s) in (5, 7)),
        p5=st.floats(0, 1), p7=st.floats(0, 1), eps=st.floats(0, 2),
    )
    def test_matches_brute_force(self, line, p5, p7, eps):
        config = WeightConfig((p5, 1 - p5), (p7, 1 - p7), eps)
        c = accumulate_line(line, config, WeightedCounts())
        bigrams, unigrams = brute_force(line, config)
        assert tables_close(dict(c.bigram_weights), bigrams)
        assert tables_close(dict(c.unigram_weights), unigrams)
        c.check()

    @settings(max_examples=200, deadline=None)
    @given(line=st.text(min_size=5, max_size=7).filter(lambda s: len(s) in (5, 7)),
           p=st.floats(0, 1))
    def test_weight_conservation(self, line, p):
        c = accumulate_line(line, WeightConfig((p, 1 - p), (p, 1 - p)), WeightedCounts())
        expected = 3.0 if len(line) == 5 else 4.0
        assert c.total_bigram_weight + c.total_unigram_weight == pytest.approx(expected, abs=1e-12)


class TestCountCorpus:
    def test_repeated_line(self):
        c = count_corpus([make_poem("p", ["ABCDE"] * 8)])
        assert c.bigram_weights["AB"] == 8.0
        assert c.bigram_weights["CD"] == 4.0
        # brute force: 8 copies of the per-line enumeration
        single, _ = brute_force("ABCDE", WeightConfig())
        assert tables_close(dict(c.bigram_weights), {k: 8 * v for k, v in single.items()})

    def test_empty(self):
        c = count_corpus([])
        assert c.total_bigram_weight == 0 and c.total_char_count == 0 and not c.vocab

    def test_error_names_poem(self):
        with pytest.raises(ValueError, match="poem bad"):
            count_corpus([make_poem("bad", ["ABCD"])])

    def test_order_independent(self):
        rng = random.Random(4)
        poems = [make_poem(str(i), ["".join(rng.choice("ABCDEFGH") for _ in range(5))
                                    for _ in range(8)]) for i in range(30)]
        config = WeightConfig.table1()
        a = count_corpus(poems, config)
        rng.shuffle(poems)
        b = count_corpus(poems, config)
        assert set(a.bigram_weights) == set(b.bigram_weights)
        assert tables_close(dict(a.bigram_weights), dict(b.bigram_weights))
        assert dict(a.raw_char_counts) == dict(b.raw_char_counts)


def _random_poems(rng, n, prefix):
    return [make_poem(f"{prefix}{i}", ["".join(rng.choice("一二三四五六七八") for _ in range(7))
                                       for _ in range(8)]) for i in range(n)]


class TestMerge:
    def test_identity(self):
        x = count_corpus([make_poem("p", ["ABCDE", "FGHIJ"])])
        assert merge(x, WeightedCounts()) == x

    def test_commutative(self):
        rng = random.Random(1)
        a = count_corpus(_random_poems(rng, 3, "a"))
        b = count_corpus(_random_poems(rng, 3, "b"))
        assert merge(a, b) == merge(b, a)

    def test_union(self):
        rng = random.Random(2)
        c1, c2 = _random_poems(rng, 3, "a"), _random_poems(rng, 3, "b")
        merged = merge(count_corpus(c1), count_corpus(c2))
        together = count_corpus(c1 + c2)
        assert tables_close(dict(merged.bigram_weights), dict(together.bigram_weights))
        assert tables_close(dict(merged.unigram_weights), dict(together.unigram_weights))
        assert dict(merged.raw_char_counts) == dict(together.raw_char_counts)
        merged.check()

    def test_does_not_mutate(self):
        a = count_corpus([make_poem("p", ["ABCDE"])])
        before = dict(a.bigram_weights)
        merge(a, a)
        assert dict(a.bigram_weights) == before


class TestSnapshot:
    def test_round_trip_is_exact(self):
        c = count_corpus([make_poem("p", ["白日依山盡", "黃河入海流"])], WeightConfig.table1(0.01))
        buf = io.StringIO()
        write_counts(c, buf)
        loaded = read_counts(buf.getvalue().splitlines(True))
        assert loaded == c
        assert loaded.total_bigram_weight == c.total_bigram_weight

    def test_deterministic_order(self):
        c = count_corpus([make_poem("p", ["EDCBA"])])
        buf = io.StringIO()
        write_counts(c, buf)
        rows = buf.getvalue().splitlines()
        assert rows[:5] == [f"C\t{ch}\t1" for ch in "ABCDE"]
        assert rows[-3:] == ["T\tbigram\t2.0", "T\tunigram\t1.0", "T\tchars\t5"]

    def test_bad_row(self):
        with pytest.raises(ValueError, match="row 1"):
            read_counts(["X\tA\t1\n"])
