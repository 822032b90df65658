import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lepor.factors import FactorValues
from lepor.metrics import (
    SegmentScore,
    geometric_term,
    hlepor_sentence,
    hlepor_system,
    hybrid_score,
    lepor_sentence,
    lepor_system,
    nlepor_sentence,
    nlepor_system,
    score_segment,
    system_score,
)
from lepor.text import ParamSet, Segment, Sentence, TaggedSentence, make_segment, tokenize


def seg_with_factors(lp, npos, hpr, index=0):
    fv = FactorValues(lp=lp, npd=-math.log(npos), npos_penal=npos,
                      precisions=(hpr,), recalls=(hpr,), hprs=(hpr,), hpr=hpr)
    return SegmentScore(index, fv, lp * npos * hpr)


class TestWorkedChain:
    """[the cat sat] against [the cat sat down], alpha:beta = 9:1."""

    def test_each_stage_by_hand(self):
        # LP: c=3 < r=4 -> exp(1 - 4/3)
        lp = math.exp(1 - Fraction(4, 3))
        # positional alignment, PD_i = i/3 - i/4 = i/12
        npd_exact = sum(abs(Fraction(i, 3) - Fraction(i, 4)) for i in (1, 2, 3)) / 3
        assert npd_exact == Fraction(1, 6)
        # P = 3/3, R = 3/4, Harmonic(9R, 1P) = 10 / (9/(3/4) + 1/1) = 10/13
        hpr = Fraction(10) / (Fraction(9) / Fraction(3, 4) + 1)
        assert hpr == Fraction(10, 13)
        expected = lp * math.exp(-float(npd_exact)) * float(hpr)

        r = lepor_sentence(make_segment("the cat sat", "the cat sat down"), ParamSet())
        assert r.factors.lp == pytest.approx(0.716531, abs=1e-6)
        assert r.factors.npd == pytest.approx(1 / 6, abs=1e-15)
        assert r.factors.npos_penal == pytest.approx(0.846482, abs=1e-6)
        assert r.factors.hpr == pytest.approx(0.769231, abs=1e-6)
        assert r.score == pytest.approx(expected, abs=1e-12)
        assert r.score == pytest.approx(0.466562, abs=1e-6)


class TestSentenceMetrics:
    def test_identity_scores_one(self):
        seg = make_segment("a b c d", "a b c d")
        p = ParamSet(ngram_weights=(0.5, 0.3, 0.2))
        assert lepor_sentence(seg, p).score == 1.0
        assert hlepor_sentence(seg, p).score == pytest.approx(1.0, abs=1e-15)
        assert nlepor_sentence(seg, p).score == pytest.approx(1.0, abs=1e-15)

    def test_no_shared_tokens(self):
        seg = make_segment("x y z", ["a b c", "d e"])
        for fn in (lepor_sentence, hlepor_sentence, nlepor_sentence):
            assert fn(seg, ParamSet()).score == 0.0

    def test_empty_hypothesis_is_degenerate(self):
        seg = make_segment("", "a b")
        r = lepor_sentence(seg, ParamSet())
        assert r.score == 0.0 and r.degenerate
        assert r.factors.npos_penal == math.exp(-r.factors.npd)

    def test_hlepor_weighting(self):
        # factors (0.5, 1, 1), weights 1:1:1 -> 3 / (2 + 1 + 1)
        s = system_score([seg_with_factors(0.5, 1.0, 1.0)], "hlepor", "B", ParamSet())
        assert s.score == pytest.approx(0.75, abs=1e-15)

    def test_hlepor_sentence_composition(self):
        seg = make_segment("the cat sat", "the cat sat down")
        p = ParamSet(w_lp=2, w_npos=1, w_hpr=7)
        r = hlepor_sentence(seg, p)
        f = r.factors
        assert r.score == pytest.approx(10 / (2 / f.lp + 1 / f.npos_penal + 7 / f.hpr), rel=1e-12)

    def test_nlepor_bigram_example(self):
        p = ParamSet(alpha=1, beta=1, ngram_weights=(0.5, 0.5))
        r = nlepor_sentence(make_segment("a b c", "a b d"), p)
        assert r.factors.hprs == pytest.approx((2 / 3, 1 / 2))
        assert r.factors.lp == 1.0 and r.factors.npd == 0.0
        assert r.score == pytest.approx(math.sqrt(1 / 3), abs=1e-12)
        assert r.score == pytest.approx(0.57735, abs=1e-5)

    def test_nlepor_missing_order_is_zero(self):
        p = ParamSet(ngram_weights=(0.5, 0.5))
        assert nlepor_sentence(make_segment("a b", "b a"), p).score == 0.0

    def test_nlepor_smoothing(self):
        p = ParamSet(alpha=1, beta=1, ngram_weights=(0.5, 0.5))
        r = nlepor_sentence(make_segment("a b", "b a"), p, smoothing=True)
        # bigram: (0+1)/(1+1) on both sides
        assert r.factors.hprs[1] == pytest.approx(0.5)
        assert r.score > 0

    def test_nlepor_reduces_to_lepor(self):
        rng = random.Random(3)
        for _ in range(200):
            hyp = " ".join(rng.choice("abcdef") for _ in range(rng.randint(1, 12)))
            ref = " ".join(rng.choice("abcdef") for _ in range(rng.randint(1, 12)))
            seg = make_segment(hyp, ref)
            assert nlepor_sentence(seg, ParamSet()).score == lepor_sentence(seg, ParamSet()).score

    def test_geometric_term(self):
        assert geometric_term([0.25], [1.0]) == 0.25
        assert geometric_term([0.25, 1.0], [0.5, 0.5]) == pytest.approx(0.5)
        assert geometric_term([0.0, 1.0], [0.0, 1.0]) == 1.0

    def test_multi_reference_recall_capped(self):
        # four matches spread over two references, effective reference has 2 tokens
        seg = make_segment("a b c d", ["a b", "c d z z z z"])
        r = lepor_sentence(seg, ParamSet())
        assert r.factors.recall == 1.0
        assert 0 <= r.score <= 1


class TestSystemLevel:
    def test_strategy_a_is_mean(self):
        scores = [seg_with_factors(0.4, 1, 1), seg_with_factors(0.8, 1, 1)]
        assert lepor_system(scores, "A").score == pytest.approx(0.6, abs=1e-15)

    def test_lepor_strategy_b(self):
        scores = [seg_with_factors(1, 1, 0.5), seg_with_factors(0.5, 1, 1)]
        assert lepor_system(scores, "B").score == pytest.approx(0.5625, abs=1e-15)

    def test_hlepor_strategies(self):
        scores = [seg_with_factors(1, 1, 1), seg_with_factors(0.5, 0.5, 0.5)]
        p = ParamSet()
        b = hlepor_system(scores, "B", p).score
        assert b == pytest.approx(0.75, abs=1e-15)
        a_scores = [SegmentScore(0, scores[0].factors, 1.0), SegmentScore(1, scores[1].factors, 0.5)]
        assert hlepor_system(a_scores, "A", p).score == pytest.approx(0.75, abs=1e-15)

    def test_nlepor_strategy_b(self):
        scores = [seg_with_factors(1, 1, 0.6), seg_with_factors(0.5, 1, 1)]
        assert nlepor_system(scores, "B").score == pytest.approx(0.6, abs=1e-15)

    def test_single_segment(self):
        r = lepor_sentence(make_segment("the cat sat", "the cat sat down"), ParamSet())
        assert lepor_system([r], "A").score == r.score
        assert lepor_system([r], "B").score == pytest.approx(r.score, abs=1e-15)

    def test_identical_segments_collapse(self):
        r = hlepor_sentence(make_segment("a b c", "a c b d"), ParamSet())
        for metric in ("lepor", "hlepor", "nlepor"):
            s = score_segment(make_segment("a b c", "a c b d"), ParamSet(), metric)
            a = system_score([s] * 4, metric, "A", ParamSet()).score
            b = system_score([s] * 4, metric, "B", ParamSet()).score
            assert a == pytest.approx(b, abs=1e-12)
        assert r.score > 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            lepor_system([], "A")

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.text("abc", min_size=1, max_size=6), st.text("abc", min_size=1, max_size=6)),
                    min_size=1, max_size=6), st.randoms())
    def test_permutation_invariance(self, pairs, rnd):
        p = ParamSet(w_lp=3, w_npos=2, w_hpr=1)
        segs = [make_segment(" ".join(h), " ".join(r)) for h, r in pairs]
        shuffled = list(segs)
        rnd.shuffle(shuffled)
        for metric in ("lepor", "hlepor", "nlepor"):
            for strat in ("A", "B"):
                a = system_score([score_segment(s, p, metric) for s in segs], metric, strat, p).score
                b = system_score([score_segment(s, p, metric) for s in shuffled], metric, strat, p).score
                assert a == pytest.approx(b, abs=1e-12)


class TestHybrid:
    def test_values(self):
        assert hybrid_score(0.7, 0.7, ParamSet(w_hw=3, w_hp=4)) == pytest.approx(0.7)
        assert hybrid_score(0.9, 0.5, ParamSet(w_hw=1, w_hp=9)) == pytest.approx(0.54, abs=1e-15)
        assert hybrid_score(0.9, 0.5, ParamSet(w_hw=1, w_hp=0)) == 0.9

    def _tagged(self):
        hyp, ref = tokenize("he said yes"), tokenize("he claimed yes")
        return Segment(hyp, (ref,), TaggedSentence(hyp, ("PRP", "VBD", "UH")),
                       (TaggedSentence(ref, ("PRP", "VBD", "UH")),))

    def test_pos_level_runs_same_metric(self):
        seg = self._tagged()
        p = ParamSet(w_hw=1, w_hp=9)
        r = score_segment(seg, p, "hlepor")
        assert r.pos_score == 1.0  # tag sequences identical
        assert r.word_score == hlepor_sentence(seg, p).score
        assert r.score == pytest.approx((r.word_score + 9 * r.pos_score) / 10)

    def test_missing_tags(self):
        with pytest.raises(ValueError, match="POS"):
            score_segment(make_segment("a", "a"), ParamSet(w_hp=1), "lepor")

    def test_system_mix(self):
        seg = self._tagged()
        p = ParamSet(w_hw=9, w_hp=1)
        scores = [score_segment(seg, p, "lepor", index=i) for i in range(3)]
        a = system_score(scores, "lepor", "A", p)
        assert a.metric == "hybrid" and a.base_metric == "lepor"
        assert a.score == pytest.approx(scores[0].score)
        b = system_score(scores, "lepor", "B", p)
        word_b = system_score([SegmentScore(s.index, s.factors, s.word_score) for s in scores], "lepor", "B", p)
        assert b.score == pytest.approx((9 * word_b.score + 1 * 1.0) / 10)


class TestShortSentences:
    def test_order_beyond_both_lengths_is_vacuous(self):
        p = ParamSet(ngram_weights=(0.4, 0.3, 0.3))
        r = nlepor_sentence(make_segment("a b", "a b"), p)
        assert r.factors.hprs == (1.0, 1.0, 1.0)
        assert r.score == 1.0

    def test_order_beyond_hypothesis_only_is_zero(self):
        p = ParamSet(ngram_weights=(0.5, 0.5))
        r = nlepor_sentence(make_segment("a", "a b"), p)
        assert r.factors.hprs[1] == 0.0 and r.score == 0.0
