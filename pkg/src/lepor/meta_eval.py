"""Statistics for judging metric scores against human assessments."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.stats import rankdata


class UndefinedCorrelation(ValueError):
    """Raised when a correlation is undefined, e.g. for a constant series."""


def _paired(x, y, min_n=2):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("series must be one-dimensional and of equal length")
    if len(x) < min_n:
        raise ValueError(f"need at least {min_n} paired observations, got {len(x)}")
    if np.isnan(x).any() or np.isnan(y).any():
        raise ValueError("series contain missing values")
    return x, y


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    x, y = _paired(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = math.sqrt(math.fsum(dx * dx))
    sy = math.sqrt(math.fsum(dy * dy))
    if sx == 0 or sy == 0:
        raise UndefinedCorrelation("correlation is undefined for a constant series")
    r = math.fsum(dx * dy) / (sx * sy)
    return max(-1.0, min(1.0, r))


def has_ties(x) -> bool:
    return len(np.unique(np.asarray(x))) != len(x)


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation.

    Without ties this is ``1 - 6 sum(d^2) / (n (n^2 - 1))``.  With ties the
    values get average ranks and Pearson is applied to the rank vectors.
    """
    x, y = _paired(x, y)
    rx = rankdata(x, method="average")
    ry = rankdata(y, method="average")
    if has_ties(x) or has_ties(y):
        return pearson(rx, ry)
    n = len(x)
    d2 = math.fsum((rx - ry) ** 2)
    return 1.0 - 6.0 * d2 / (n * (n * n - 1))


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """(concordant - discordant) / (n (n - 1) / 2).

    Pairs tied in either series count as neither concordant nor discordant
    but stay in the denominator.
    """
    x, y = _paired(x, y)
    n = len(x)
    sx = np.sign(x[:, None] - x[None, :])
    sy = np.sign(y[:, None] - y[None, :])
    # every unordered pair appears twice in the full matrix
    s = float((sx * sy).sum()) / 2.0
    return s / (n * (n - 1) / 2.0)


def kappa(p_agree: float, p_chance: float) -> float:
    if not (0.0 <= p_agree <= 1.0 and 0.0 <= p_chance <= 1.0):
        raise ValueError("proportions must lie in [0, 1]")
    if p_chance >= 1.0:
        raise ValueError("kappa is undefined when chance agreement is 1")
    return (p_agree - p_chance) / (1.0 - p_chance)


def cohen_kappa(a: Sequence, b: Sequence) -> float:
    """Two-rater Cohen's kappa with chance agreement from the raters' marginals."""
    if len(a) != len(b) or not len(a):
        raise ValueError("label sequences must be non-empty and of equal length")
    n = len(a)
    p_agree = sum(1 for u, v in zip(a, b) if u == v) / n
    labels = set(a) | set(b)
    p_chance = sum((list(a).count(c) / n) * (list(b).count(c) / n) for c in labels)
    return kappa(p_agree, p_chance)


def pairwise_agreement(labels, label_set=None):
    """Pooled pairwise P(A) and uniform-chance P(E) from an item x annotator matrix.

    ``labels[i][j]`` is annotator j's label for item i; ``None`` marks a
    missing judgment.  Every pair of annotators who both judged an item is
    one comparison.  P(E) is ``1 / |label_set|``.
    """
    agree = total = 0
    seen = set()
    for row in labels:
        vals = [v for v in row if v is not None]
        seen.update(vals)
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                total += 1
                agree += vals[i] == vals[j]
    if total == 0:
        raise ValueError("no item was judged by two annotators")
    k = len(label_set) if label_set is not None else len(seen)
    return agree / total, 1.0 / k


def pairwise_kappa(labels, label_set=None) -> float:
    return kappa(*pairwise_agreement(labels, label_set))


def mae(hyp: Sequence[float], true: Sequence[float]) -> float:
    h, v = _paired(hyp, true, min_n=1)
    return float(np.abs(h - v).mean())


def rmse(hyp: Sequence[float], true: Sequence[float]) -> float:
    h, v = _paired(hyp, true, min_n=1)
    return math.sqrt(float(((h - v) ** 2).mean()))


def quantile_sizes(n_items: int, n_quantiles: int):
    """Sizes of ``n_quantiles`` contiguous blocks; earlier blocks take the extra items."""
    base, extra = divmod(n_items, n_quantiles)
    return [base + (1 if k < extra else 0) for k in range(n_quantiles)]


def delta_avg(hyp_scores: Sequence[float], true_values: Sequence[float], n_quantiles: int = 2) -> float:
    """Average gain of the top-k quantile unions over the global mean.

    Items are ordered by ``hyp_scores`` descending (stable on ties) and cut
    into ``n_quantiles`` contiguous blocks.
    """
    h, v = _paired(hyp_scores, true_values, min_n=1)
    if isinstance(n_quantiles, bool) or not isinstance(n_quantiles, (int, np.integer)):
        raise ValueError("n_quantiles must be an integer")
    if not 2 <= n_quantiles <= len(h):
        raise ValueError(f"n_quantiles must lie in [2, {len(h)}], got {n_quantiles}")
    order = np.argsort(-h, kind="stable")
    ranked = v[order]
    bounds = np.cumsum(quantile_sizes(len(h), n_quantiles))
    heads = [ranked[:bounds[k]].mean() for k in range(n_quantiles - 1)]
    return math.fsum(heads) / (n_quantiles - 1) - float(v.mean())


STATISTICS = {
    "pearson": pearson,
    "spearman": spearman,
    "kendall": kendall_tau,
    "mae": mae,
    "rmse": rmse,
}
