"""scikit-learn style front end for the metric family."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_segments
from .metrics import METRICS, STRATEGIES, score_segment, system_score
from .text import ParamSet, validate_params


class LEPOR(TransformerMixin, BaseEstimator):
    """Sentence- and system-level LEPOR scorer.

    Parameters mirror :class:`~lepor.text.ParamSet`; ``metric`` picks
    ``"lepor"``, ``"hlepor"`` or ``"nlepor"``, ``strategy`` the system-level
    aggregation.  Setting ``w_hp > 0`` mixes in the POS-level score, which
    requires tagged segments.  ``pos_params`` optionally gives the POS level
    its own ParamSet.

    The scorer learns nothing: ``fit`` only validates the parameters.
    ``transform`` returns one score per segment.
    """

    def __init__(self, metric="lepor", alpha=9.0, beta=1.0, w_lp=1.0, w_npos=1.0, w_hpr=1.0,
                 ngram_weights=(1.0,), window=2, w_hw=1.0, w_hp=0.0, strategy="A",
                 smoothing=False, lowercase=True, pos_params=None):
        self.metric = metric
        self.alpha = alpha
        self.beta = beta
        self.w_lp = w_lp
        self.w_npos = w_npos
        self.w_hpr = w_hpr
        self.ngram_weights = ngram_weights
        self.window = window
        self.w_hw = w_hw
        self.w_hp = w_hp
        self.strategy = strategy
        self.smoothing = smoothing
        self.lowercase = lowercase
        self.pos_params = pos_params

    @classmethod
    def from_paramset(cls, p: ParamSet, **kwargs):
        return cls(alpha=p.alpha, beta=p.beta, w_lp=p.w_lp, w_npos=p.w_npos, w_hpr=p.w_hpr,
                   ngram_weights=tuple(p.ngram_weights), window=p.context_window,
                   w_hw=p.w_hw, w_hp=p.w_hp, **kwargs)

    def to_paramset(self) -> ParamSet:
        return ParamSet(alpha=self.alpha, beta=self.beta, w_lp=self.w_lp, w_npos=self.w_npos,
                        w_hpr=self.w_hpr, ngram_weights=tuple(self.ngram_weights),
                        context_window=self.window, w_hw=self.w_hw, w_hp=self.w_hp)

    def fit(self, X=None, y=None):
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        self.params_ = validate_params(self.to_paramset())
        self.pos_params_ = None if self.pos_params is None else validate_params(self.pos_params)
        return self

    def score_segments(self, X):
        check_is_fitted(self, "params_")
        segs = check_segments(X, self.lowercase)
        return [score_segment(seg, self.params_, self.metric, index=i, smoothing=self.smoothing,
                              pos_params=self.pos_params_)
                for i, seg in enumerate(segs)]

    def transform(self, X):
        return np.array([s.score for s in self.score_segments(X)], dtype=float)

    def system_score(self, X, strategy=None):
        scores = self.score_segments(X)
        return system_score(scores, self.metric, strategy or self.strategy, self.params_,
                            self.pos_params_)
