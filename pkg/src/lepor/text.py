"""Tokens, sentences, segments, corpora and the tunable parameter set."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple


class InvalidParams(ValueError):
    """Raised when a ParamSet violates one of its invariants."""


@dataclass(frozen=True)
class Sentence:
    tokens: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"invalid token {tok!r}")

    @property
    def length(self) -> int:
        return len(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return " ".join(self.tokens)


@dataclass(frozen=True)
class TaggedSentence:
    sentence: Sentence
    tags: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.tags) != self.sentence.length:
            raise ValueError(
                f"{len(self.tags)} tags for {self.sentence.length} tokens")

    def tag_sentence(self) -> Sentence:
        """The tag sequence viewed as a sentence of opaque symbols."""
        return Sentence(self.tags)


@dataclass(frozen=True)
class Segment:
    hypothesis: Sentence
    references: Tuple[Sentence, ...]
    hypothesis_tags: Optional[TaggedSentence] = None
    reference_tags: Optional[Tuple[TaggedSentence, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "references", tuple(self.references))
        if not self.references:
            raise ValueError("a segment needs at least one reference")
        if self.reference_tags is not None:
            object.__setattr__(self, "reference_tags", tuple(self.reference_tags))
        has_hyp = self.hypothesis_tags is not None
        has_ref = self.reference_tags is not None
        if has_hyp != has_ref:
            raise ValueError("tags must be given for the hypothesis and every reference")
        if has_ref and len(self.reference_tags) != len(self.references):
            raise ValueError("tags must be given for the hypothesis and every reference")

    @property
    def has_tags(self) -> bool:
        return self.hypothesis_tags is not None

    def pos_view(self) -> "Segment":
        """The same segment with every sentence replaced by its tag sequence."""
        if not self.has_tags:
            raise ValueError("segment carries no POS tags")
        return Segment(self.hypothesis_tags.tag_sentence(),
                       tuple(t.tag_sentence() for t in self.reference_tags))


@dataclass(frozen=True)
class Corpus:
    segments: Tuple[Segment, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @property
    def segment_count(self) -> int:
        return len(self.segments)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __getitem__(self, i):
        return self.segments[i]


@dataclass(frozen=True)
class ParamSet:
    """All tunable weights of the metric family.

    ``alpha`` weights recall and ``beta`` precision inside the harmonic
    mean; ``w_lp``, ``w_npos`` and ``w_hpr`` weight the three factors in
    hLEPOR; ``ngram_weights[n-1]`` weights order ``n`` in nLEPOR;
    ``context_window`` is the alignment neighbourhood; ``w_hw``/``w_hp``
    mix word- and POS-level scores.
    """

    alpha: float = 9.0
    beta: float = 1.0
    w_lp: float = 1.0
    w_npos: float = 1.0
    w_hpr: float = 1.0
    ngram_weights: Tuple[float, ...] = (1.0,)
    context_window: int = 2
    w_hw: float = 1.0
    w_hp: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "ngram_weights", tuple(self.ngram_weights))

    @property
    def max_order(self) -> int:
        return len(self.ngram_weights)


DEFAULT_PARAMS = ParamSet()


def _finite_nonneg(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParams(f"{name} must be a number")
    if not math.isfinite(value) or value < 0:
        raise InvalidParams(f"{name} must be non-negative")


def validate_params(p: ParamSet) -> ParamSet:
    """Return ``p`` unchanged if every invariant holds, else raise InvalidParams."""
    for name in ("alpha", "beta", "w_lp", "w_npos", "w_hpr", "w_hw", "w_hp"):
        _finite_nonneg(name, getattr(p, name))
    if p.alpha + p.beta <= 0:
        raise InvalidParams("alpha+beta must be positive")
    if p.w_lp + p.w_npos + p.w_hpr <= 0:
        raise InvalidParams("w_lp+w_npos+w_hpr must be positive")
    if p.w_hw + p.w_hp <= 0:
        raise InvalidParams("w_hw+w_hp must be positive")
    if not p.ngram_weights:
        raise InvalidParams("ngram weights must not be empty")
    for w in p.ngram_weights:
        _finite_nonneg("ngram weight", w)
    if abs(math.fsum(p.ngram_weights) - 1.0) > 1e-9:
        raise InvalidParams("ngram weights must sum to 1")
    cw = p.context_window
    if isinstance(cw, bool) or not isinstance(cw, int) or cw < 1:
        raise InvalidParams("context_window must be a positive integer")
    return p


def tokenize(line: str, lowercase: bool = True) -> Sentence:
    """Split on whitespace runs and case-fold every token."""
    tokens = line.split()
    if lowercase:
        tokens = [t.lower() for t in tokens]
    return Sentence(tuple(tokens))


def make_segment(hypothesis, references: Sequence, lowercase: bool = True) -> Segment:
    """Build a Segment from raw strings or ready Sentences."""
    def conv(s):
        return s if isinstance(s, Sentence) else tokenize(s, lowercase)
    if isinstance(references, (str, Sentence)):
        references = [references]
    return Segment(conv(hypothesis), tuple(conv(r) for r in references))
