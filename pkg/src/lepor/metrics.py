"""LEPOR, hLEPOR and nLEPOR at sentence and system level, plus the word/POS mix."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

from .align import align, match_count
from .factors import (
    FactorValues,
    effective_reference,
    harmonic_pr,
    length_penalty,
    ngram_counts,
    npd,
    npos_penal,
    unigram_pr,
    weighted_harmonic,
)
from .text import ParamSet, Segment

METRICS = ("lepor", "hlepor", "nlepor")
STRATEGIES = ("A", "B")

FACTOR_NAMES = ("lp", "npd", "npos_penal", "precision", "recall", "hpr")


@dataclass(frozen=True)
class SegmentScore:
    index: int
    factors: FactorValues
    score: float
    degenerate: bool = False
    pos_factors: Optional[FactorValues] = None
    word_score: Optional[float] = None
    pos_score: Optional[float] = None


@dataclass(frozen=True)
class SystemScore:
    strategy: str
    metric: str
    score: float
    factor_means: Dict[str, float] = field(default_factory=dict)
    pos_factor_means: Optional[Dict[str, float]] = None
    base_metric: Optional[str] = None


def _degenerate_factors(orders: int) -> FactorValues:
    zeros = (0.0,) * orders
    return FactorValues(lp=0.0, npd=0.0, npos_penal=1.0,
                        precisions=zeros, recalls=zeros, hprs=zeros, hpr=0.0)


def geometric_term(hprs: Sequence[float], weights: Sequence[float]) -> float:
    """exp(sum w_n log HPR_n), written as a product of powers so that a single
    order with weight 1 returns its HPR unchanged."""
    out = 1.0
    for h, w in zip(hprs, weights):
        if w == 0:
            continue
        if h == 0:
            return 0.0
        out *= h ** w
    return out


def segment_factors(seg: Segment, p: ParamSet, orders: int = 1,
                    smoothing: bool = False,
                    aligner: Callable = align):
    """Compute FactorValues for one segment.

    Returns ``(factors, degenerate)``.  ``hpr`` in the result is the unigram
    harmonic mean; callers composing nLEPOR replace it with the n-gram term.
    """
    hyp = seg.hypothesis
    ref = effective_reference(hyp, seg.references)
    if hyp.length == 0 or ref.length == 0:
        return _degenerate_factors(orders), True

    alignment = aligner(hyp, seg.references, p.context_window)
    matched = match_count(alignment)
    lp = length_penalty(hyp.length, ref.length)
    d = npd(alignment)
    pp = npos_penal(d)
    # with several references the alignment can match more tokens than the
    # effective reference holds; recall is capped at 1
    prec, rec = unigram_pr(matched, hyp.length, ref.length)
    rec = min(rec, 1.0)
    precisions, recalls = [prec], [rec]
    for n in range(2, orders + 1):
        m, hn, rn = ngram_counts(hyp, ref, n)
        if hn == 0 and rn == 0:
            # both sides too short for this order: vacuous agreement
            precisions.append(1.0)
            recalls.append(1.0)
            continue
        if smoothing:
            m, hn, rn = m + 1, hn + 1, rn + 1
        pn, rn_ = unigram_pr(m, hn, rn)
        precisions.append(pn)
        recalls.append(rn_)
    hprs = tuple(harmonic_pr(pn, rn_, p.alpha, p.beta)
                 for pn, rn_ in zip(precisions, recalls))
    fv = FactorValues(lp=lp, npd=d, npos_penal=pp, precisions=tuple(precisions),
                      recalls=tuple(recalls), hprs=hprs, hpr=hprs[0])
    return fv, False


def _with_hpr(fv: FactorValues, hpr: float) -> FactorValues:
    return FactorValues(fv.lp, fv.npd, fv.npos_penal, fv.precisions, fv.recalls, fv.hprs, hpr)


def _compose(metric: str, fv: FactorValues, p: ParamSet) -> float:
    if metric == "hlepor":
        return weighted_harmonic((fv.lp, fv.npos_penal, fv.hpr), (p.w_lp, p.w_npos, p.w_hpr))
    return fv.lp * fv.npos_penal * fv.hpr


def _score_level(seg: Segment, p: ParamSet, metric: str, smoothing: bool, aligner):
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    orders = p.max_order if metric == "nlepor" else 1
    fv, degenerate = segment_factors(seg, p, orders, smoothing, aligner)
    if metric == "nlepor":
        fv = _with_hpr(fv, geometric_term(fv.hprs, p.ngram_weights))
    return fv, _compose(metric, fv, p), degenerate


def lepor_sentence(seg: Segment, p: ParamSet, index: int = 0, aligner: Callable = align) -> SegmentScore:
    """LP x NPosPenal x Harmonic(alpha R, beta P)."""
    fv, s, deg = _score_level(seg, p, "lepor", False, aligner)
    return SegmentScore(index, fv, s, deg)


def hlepor_sentence(seg: Segment, p: ParamSet, index: int = 0, aligner: Callable = align) -> SegmentScore:
    fv, s, deg = _score_level(seg, p, "hlepor", False, aligner)
    return SegmentScore(index, fv, s, deg)


def nlepor_sentence(seg: Segment, p: ParamSet, index: int = 0, smoothing: bool = False,
                    aligner: Callable = align) -> SegmentScore:
    """LP x NPosPenal x exp(sum_n w_n log HPR_n) up to order ``len(p.ngram_weights)``.

    No smoothing by default, so a single missing n-gram order zeroes the
    score.  ``smoothing=True`` adds one to matched and total chunk counts
    for orders >= 2.  An order for which neither the hypothesis nor the
    effective reference has any chunks counts as full agreement.
    """
    fv, s, deg = _score_level(seg, p, "nlepor", smoothing, aligner)
    return SegmentScore(index, fv, s, deg)


def hybrid_score(word: float, pos: float, p: ParamSet) -> float:
    total = p.w_hw + p.w_hp
    if total <= 0:
        raise ValueError("w_hw+w_hp must be positive")
    if p.w_hp == 0:
        return word
    return (p.w_hw * word + p.w_hp * pos) / total


def score_segment(seg: Segment, p: ParamSet, metric: str = "lepor", index: int = 0,
                  smoothing: bool = False, aligner: Callable = align,
                  pos_params: Optional[ParamSet] = None) -> SegmentScore:
    """Score one segment, mixing in the POS-level score when ``p.w_hp > 0``.

    The POS level runs the same metric on the tag sequences; it uses
    ``pos_params`` for its internal weights when given, else ``p``.
    """
    fv, s, deg = _score_level(seg, p, metric, smoothing, aligner)
    if p.w_hp == 0:
        return SegmentScore(index, fv, s, deg)
    if not seg.has_tags:
        raise ValueError(f"segment {index}: POS tags required when w_hp > 0")
    pfv, ps, pdeg = _score_level(seg.pos_view(), pos_params or p, metric, smoothing, aligner)
    return SegmentScore(index, fv, hybrid_score(s, ps, p), deg or pdeg,
                        pos_factors=pfv, word_score=s, pos_score=ps)


def _factor_means(fvs: Sequence[FactorValues]) -> Dict[str, float]:
    n = len(fvs)
    return {name: math.fsum(getattr(f, name) for f in fvs) / n for name in FACTOR_NAMES}


def _system_level(means: Dict[str, float], metric: str, p: Optional[ParamSet]) -> float:
    if metric == "hlepor":
        if p is None:
            raise ValueError("hLEPOR strategy B needs the factor weights")
        return weighted_harmonic((means["lp"], means["npos_penal"], means["hpr"]),
                                 (p.w_lp, p.w_npos, p.w_hpr))
    return means["lp"] * means["npos_penal"] * means["hpr"]


def system_score(scores: Sequence[SegmentScore], metric: str = "lepor", strategy: str = "A",
                 p: Optional[ParamSet] = None, pos_params: Optional[ParamSet] = None) -> SystemScore:
    """Aggregate segment scores.

    Strategy A averages sentence scores.  Strategy B averages each factor
    over the segments, then composes the means the way the sentence metric
    composes its factors.  POS-mixed scores combine the word- and POS-level
    system scores with the same mixing weights.
    """
    if not scores:
        raise ValueError("cannot aggregate an empty corpus")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    means = _factor_means([s.factors for s in scores])
    hybrid = any(s.pos_factors is not None for s in scores)
    pos_means = None
    if hybrid:
        if not all(s.pos_factors is not None for s in scores):
            raise ValueError("mixed word-only and POS-mixed segment scores")
        pos_means = _factor_means([s.pos_factors for s in scores])

    if strategy == "A":
        value = math.fsum(s.score for s in scores) / len(scores)
    elif not hybrid:
        value = _system_level(means, metric, p)
    else:
        word = _system_level(means, metric, p)
        pos = _system_level(pos_means, metric, pos_params or p)
        value = hybrid_score(word, pos, p)
    return SystemScore(strategy, "hybrid" if hybrid else metric, value, means, pos_means,
                       base_metric=metric)


def lepor_system(scores: Sequence[SegmentScore], strategy: str = "A") -> SystemScore:
    return system_score(scores, "lepor", strategy)


def hlepor_system(scores: Sequence[SegmentScore], strategy: str = "A",
                  p: Optional[ParamSet] = None) -> SystemScore:
    return system_score(scores, "hlepor", strategy, p)


def nlepor_system(scores: Sequence[SegmentScore], strategy: str = "A") -> SystemScore:
    return system_score(scores, "nlepor", strategy)
