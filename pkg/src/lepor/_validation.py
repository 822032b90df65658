"""Input coercion shared by the estimators."""

from __future__ import annotations

from .text import Corpus, Segment, Sentence, make_segment


def check_segments(X, lowercase=True):
    """Coerce ``X`` into a list of Segments.

    Accepts a Corpus, an iterable of Segments, or an iterable of
    ``(hypothesis, references)`` pairs where each side is a raw string or a
    Sentence and ``references`` may be a single item or a sequence.
    """
    if isinstance(X, Corpus):
        return list(X.segments)
    if isinstance(X, (str, Segment)):
        raise TypeError("expected a collection of segments, got a single item")
    out = []
    for i, item in enumerate(X):
        if isinstance(item, Segment):
            out.append(item)
            continue
        try:
            hyp, refs = item
        except (TypeError, ValueError):
            raise TypeError(f"item {i}: expected a Segment or a (hypothesis, references) pair") from None
        if not isinstance(hyp, (str, Sentence)):
            raise TypeError(f"item {i}: hypothesis must be a string or Sentence")
        out.append(make_segment(hyp, refs, lowercase))
    return out


def check_systems(systems, lowercase=True):
    """Coerce a collection of per-system corpora."""
    out = [check_segments(s, lowercase) for s in systems]
    for i, segs in enumerate(out):
        if not segs:
            raise ValueError(f"system {i} has no segments")
    return out
