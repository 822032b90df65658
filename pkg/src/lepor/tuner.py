"""Exhaustive grid search over parameter sets, maximizing correlation with
human system-level judgments."""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_systems
from .align import align
from .estimator import LEPOR
from .meta_eval import UndefinedCorrelation, kendall_tau, pearson, spearman
from .metrics import METRICS, STRATEGIES, score_segment, system_score
from .text import InvalidParams, ParamSet, validate_params

OBJECTIVES = {"pearson": pearson, "spearman": spearman, "kendall": kendall_tau}


def normalize_ratio(ratio: Sequence[float]) -> Tuple[float, ...]:
    """Scale a weight ratio to sum 1; rounded so equal ratios compare equal."""
    vals = [float(v) for v in ratio]
    if any(v < 0 or not math.isfinite(v) for v in vals):
        raise InvalidParams(f"ratio {tuple(ratio)} has a negative or non-finite entry")
    total = math.fsum(vals)
    if total <= 0:
        raise InvalidParams(f"ratio {tuple(ratio)} has no positive entry")
    return tuple(round(v / total, 12) for v in vals)


def _canonical(ratios, width=None):
    seen = []
    for r in ratios:
        if width is not None and len(r) != width:
            raise InvalidParams(f"expected {width} entries in {tuple(r)}")
        c = normalize_ratio(r)
        if c not in seen:
            seen.append(c)
    return seen


@dataclass(frozen=True)
class GridSpec:
    """Candidate values per parameter group.

    ``factor_weights`` entries are ``(w_lp, w_npos, w_hpr)`` ratios,
    ``alpha_beta`` entries ``(alpha, beta)``, ``hw_hp`` entries
    ``(w_hw, w_hp)``; ``ngram_weights`` entries are per-order ratios.
    """

    factor_weights: Tuple[Tuple[float, ...], ...] = ((1, 1, 1),)
    alpha_beta: Tuple[Tuple[float, ...], ...] = ((9, 1),)
    hw_hp: Tuple[Tuple[float, ...], ...] = ((1, 0),)
    ngram_weights: Tuple[Tuple[float, ...], ...] = ((1,),)
    windows: Tuple[int, ...] = (2,)
    objective: str = "spearman"
    strategy: str = "A"

    def __post_init__(self):
        for name in ("factor_weights", "alpha_beta", "hw_hp", "ngram_weights"):
            object.__setattr__(self, name, tuple(tuple(r) for r in getattr(self, name)))
        object.__setattr__(self, "windows", tuple(self.windows))
        if self.objective not in OBJECTIVES:
            raise InvalidParams(f"objective must be one of {sorted(OBJECTIVES)}")
        if self.strategy not in STRATEGIES:
            raise InvalidParams(f"strategy must be one of {STRATEGIES}")

    def points(self) -> List[ParamSet]:
        """Every distinct grid point, in enumeration order."""
        fw = _canonical(self.factor_weights, 3)
        ab = _canonical(self.alpha_beta, 2)
        mix = _canonical(self.hw_hp, 2)
        ng = _canonical(self.ngram_weights)
        windows = list(dict.fromkeys(self.windows))
        pts = []
        for (lp, npos, hpr), (a, b), (hw, hp), w, win in itertools.product(fw, ab, mix, ng, windows):
            p = ParamSet(alpha=a, beta=b, w_lp=lp, w_npos=npos, w_hpr=hpr, ngram_weights=w,
                         context_window=win, w_hw=hw, w_hp=hp)
            pts.append(validate_params(p))
        if not pts:
            raise InvalidParams("the grid is empty")
        return pts


# Observed tuned ratios, factor weights listed as (w_lp, w_npos, w_hpr).
PRESETS = {
    "hlepor": GridSpec(
        factor_weights=((2, 1, 7), (2, 1, 3), (3, 7, 1)),
        alpha_beta=((9, 1), (1, 9)),
        hw_hp=((9, 1), (1, 9)),
    ),
}


@dataclass(frozen=True)
class TuneResult:
    best_params: ParamSet
    best_objective: float
    table: Tuple[Tuple[ParamSet, float], ...] = field(default=())


def _objective_value(fn, metric_scores, human):
    try:
        return fn(metric_scores, human)
    except UndefinedCorrelation:
        return float("nan")


def grid_search(systems, human_scores: Sequence[float], grid: GridSpec, metric: str = "hlepor",
                smoothing: bool = False, lowercase: bool = True) -> TuneResult:
    """Score every system under every grid point and keep the best correlation.

    ``systems`` holds one corpus (or segment collection) per MT system,
    parallel to ``human_scores``.  The first grid point wins ties.
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    corpora = check_systems(systems, lowercase)
    human = np.asarray(human_scores, dtype=float)
    if len(corpora) != len(human):
        raise ValueError(f"{len(corpora)} systems but {len(human)} human scores")
    if len(corpora) < 3:
        raise ValueError("tuning needs at least 3 systems")
    if np.all(human == human[0]):
        raise ValueError("human scores are all equal; no correlation can be measured")

    objective = OBJECTIVES[grid.objective]
    # alignment only depends on the sentences and the window
    cached_align = functools.lru_cache(maxsize=None)(align)

    table = []
    best = None
    for p in grid.points():
        sys_scores = []
        for segs in corpora:
            scored = [score_segment(seg, p, metric, index=i, smoothing=smoothing, aligner=cached_align)
                      for i, seg in enumerate(segs)]
            sys_scores.append(system_score(scored, metric, grid.strategy, p).score)
        value = _objective_value(objective, sys_scores, human)
        table.append((p, value))
        if not math.isnan(value) and (best is None or value > best[1]):
            best = (p, value)
    if best is None:
        raise ValueError("the objective is undefined at every grid point")
    return TuneResult(best[0], best[1], tuple(table))


class LeporTuner(BaseEstimator):
    """Grid-search tuner with the usual ``fit`` / ``best_params_`` surface.

    ``fit(systems, human_scores)`` takes one corpus per MT system and the
    matching human system scores.
    """

    def __init__(self, grid=None, metric="hlepor", smoothing=False, lowercase=True):
        self.grid = grid
        self.metric = metric
        self.smoothing = smoothing
        self.lowercase = lowercase

    def fit(self, systems, human_scores):
        grid = self.grid if self.grid is not None else GridSpec()
        result = grid_search(systems, human_scores, grid, self.metric, self.smoothing, self.lowercase)
        self.result_ = result
        self.best_params_ = result.best_params
        self.best_score_ = result.best_objective
        self.grid_table_ = result.table
        self.best_estimator_ = LEPOR.from_paramset(
            result.best_params, metric=self.metric, strategy=grid.strategy,
            smoothing=self.smoothing, lowercase=self.lowercase).fit()
        return self
