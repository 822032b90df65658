"""LEPOR family machine translation evaluation."""

from .align import AlignedPair, Alignment, align, match_count
from .estimator import LEPOR
from .factors import (
    FactorValues,
    effective_reference,
    length_penalty,
    ngram_pr,
    npd,
    npos_penal,
    unigram_pr,
    weighted_harmonic,
)
from .metrics import (
    SegmentScore,
    SystemScore,
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
from .text import (
    Corpus,
    InvalidParams,
    ParamSet,
    Segment,
    Sentence,
    TaggedSentence,
    make_segment,
    tokenize,
    validate_params,
)
from .tuner import GridSpec, LeporTuner, TuneResult, grid_search

__version__ = "0.1.0"
