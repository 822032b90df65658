"""Scalar factors: length penalty, position-difference penalty, precision/recall
and weighted harmonic means."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Tuple

from .align import Alignment
from .text import Sentence


@dataclass(frozen=True)
class FactorValues:
    """Per-sentence factor values.

    ``precisions``, ``recalls`` and ``hprs`` are indexed by n-gram order - 1.
    ``hpr`` is the third factor actually composed into the score: the unigram
    harmonic mean for LEPOR/hLEPOR, the weighted geometric n-gram term for
    nLEPOR.
    """

    lp: float
    npd: float
    npos_penal: float
    precisions: Tuple[float, ...]
    recalls: Tuple[float, ...]
    hprs: Tuple[float, ...]
    hpr: float

    @property
    def precision(self) -> float:
        return self.precisions[0]

    @property
    def recall(self) -> float:
        return self.recalls[0]


def length_penalty(c: int, r: int) -> float:
    if r <= 0:
        raise ValueError("reference length must be positive")
    if c < 0:
        raise ValueError("hypothesis length must be non-negative")
    if c == 0:
        return 0.0
    if c < r:
        return math.exp(1.0 - r / c)
    if c > r:
        return math.exp(1.0 - c / r)
    return 1.0


def npd(a: Alignment) -> float:
    """Mean absolute normalized position difference over hypothesis tokens.

    Unaligned tokens contribute zero; an empty hypothesis has NPD 0.
    """
    if a.hyp_length == 0:
        return 0.0
    h = a.hyp_length
    total = math.fsum(abs((x + 1) / h - (y + 1) / a.ref_lengths[rid])
                      for x, rid, y in a.pairs)
    return total / h


def npos_penal(npd_value: float) -> float:
    if not 0.0 <= npd_value <= 1.0:
        raise ValueError(f"NPD must lie in [0, 1], got {npd_value}")
    return math.exp(-npd_value)


def unigram_pr(match: int, hyp_len: int, ref_len: int) -> Tuple[float, float]:
    p = match / hyp_len if hyp_len > 0 else 0.0
    r = match / ref_len if ref_len > 0 else 0.0
    return p, r


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def ngram_counts(hyp: Sentence, ref: Sentence, n: int) -> Tuple[int, int, int]:
    """(matched, hypothesis chunks, reference chunks) for order ``n``.

    Each hypothesis n-gram consumes at most one equal reference n-gram.
    """
    if n < 1:
        raise ValueError("n-gram order must be >= 1")
    h = _ngrams(hyp.tokens, n)
    r = _ngrams(ref.tokens, n)
    matched = sum((h & r).values())
    return matched, max(hyp.length - n + 1, 0), max(ref.length - n + 1, 0)


def ngram_pr(hyp: Sentence, ref: Sentence, n: int) -> Tuple[float, float]:
    matched, hn, rn = ngram_counts(hyp, ref, n)
    return unigram_pr(matched, hn, rn)


def weighted_harmonic(values: Sequence[float], weights: Sequence[float]) -> float:
    """sum(w) / sum(w / v); zero whenever a positively weighted value is zero.

    Zero-weight entries are ignored entirely.
    """
    if len(values) != len(weights):
        raise ValueError("values and weights differ in length")
    wsum = math.fsum(weights)
    if wsum <= 0:
        raise ValueError("weights must have a positive sum")
    denom = []
    for v, w in zip(values, weights):
        if w == 0:
            continue
        if v == 0:
            return 0.0
        denom.append(w / v)
    return wsum / math.fsum(denom)


def harmonic_pr(precision: float, recall: float, alpha: float, beta: float) -> float:
    """Harmonic(alpha*R, beta*P)."""
    return weighted_harmonic((recall, precision), (alpha, beta))


def effective_reference(hyp: Sentence, refs: Sequence[Sentence]) -> Sentence:
    """Reference nearest in length to ``hyp``; ties go shorter, then earlier.

    Empty references are only considered when every reference is empty.
    """
    if not refs:
        raise ValueError("at least one reference is required")
    pool = [(i, r) for i, r in enumerate(refs) if r.length > 0] or list(enumerate(refs))
    _, best = min(pool, key=lambda ir: (abs(ir[1].length - hyp.length), ir[1].length, ir[0]))
    return best
