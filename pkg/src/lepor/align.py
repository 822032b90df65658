"""Context-dependent one-to-one word alignment from hypothesis to references.

The hypothesis is scanned left to right.  Each token may align to any
still-unclaimed reference token with the same surface form, in any
reference.  Candidates whose neighbourhood matches (some offset ``k`` with
``0 < |k| <= window`` holds equal tokens on both sides) are preferred; among
the preferred set the candidate with the smallest normalized position
difference wins, so the resulting position penalty stays small.  Remaining
ties go to the lower reference id, then the lower reference position.
"""

from __future__ import annotations

from math import lcm
from typing import NamedTuple, Sequence, Tuple

from .text import Sentence


class AlignedPair(NamedTuple):
    hyp_index: int
    ref_id: int
    ref_index: int


class Alignment(NamedTuple):
    pairs: Tuple[AlignedPair, ...]
    hyp_length: int
    ref_lengths: Tuple[int, ...]


def _has_context(hyp, x, ref, y, window):
    hlen, rlen = len(hyp), len(ref)
    for k in range(1, window + 1):
        if x + k < hlen and y + k < rlen and hyp[x + k] == ref[y + k]:
            return True
        if x - k >= 0 and y - k >= 0 and hyp[x - k] == ref[y - k]:
            return True
    return False


def align(hyp: Sentence, refs: Sequence[Sentence], window: int = 2) -> Alignment:
    if window < 1:
        raise ValueError("window must be >= 1")
    if not refs:
        raise ValueError("at least one reference is required")
    htoks = hyp.tokens
    rtoks = [r.tokens for r in refs]
    hlen = len(htoks)
    ref_lengths = tuple(len(r) for r in rtoks)

    # |(x+1)/hlen - (y+1)/rlen| scaled by hlen*L stays an exact integer.
    scale = lcm(*[n for n in ref_lengths if n]) if any(ref_lengths) else 1

    # unclaimed reference slots per surface form, in (ref_id, ref_index) order
    free = {}
    for rid, toks in enumerate(rtoks):
        for y, tok in enumerate(toks):
            free.setdefault(tok, []).append((rid, y))
    pairs = []
    for x, tok in enumerate(htoks):
        cands = free.get(tok)
        if not cands:
            continue
        if len(cands) == 1:
            best = cands[0]
        else:
            best_key = None
            for rid, y in cands:
                dist = abs((x + 1) * scale - (y + 1) * (scale // ref_lengths[rid]) * hlen)
                key = (not _has_context(htoks, x, rtoks[rid], y, window), dist)
                # candidates are visited in (ref_id, ref_index) order: strict < keeps the first
                if best_key is None or key < best_key:
                    best_key, best = key, (rid, y)
        cands.remove(best)
        pairs.append(AlignedPair(x, best[0], best[1]))
    return Alignment(tuple(pairs), hlen, ref_lengths)


def match_count(a: Alignment) -> int:
    return len(a.pairs)
