"""Classical filter rankers used as comparison baselines.

All of them score features one at a time and rank higher scores first.
The information-theoretic scores (information gain, gain ratio, symmetrical
uncertainty, chi-square) work on discretized features; entropies are in bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .entropy import Direction, FeatureRanking
from .errors import ConfigError, DegenerateInput


class BaselineMethod(enum.Enum):
    CHI_SQUARE = "chi-square"
    CORRELATION = "correlation"
    GAIN_RATIO = "gain-ratio"
    INFO_GAIN = "info-gain"
    RELIEFF = "relieff"
    SYMMETRICAL_UNCERTAINTY = "symmetrical-uncertainty"


class BinStrategy(enum.Enum):
    EQUAL_WIDTH = "equal-width"
    EQUAL_FREQUENCY = "equal-frequency"


@dataclass(frozen=True)
class DiscretizationSpec:
    bins: int = 10
    strategy: BinStrategy = BinStrategy.EQUAL_WIDTH

    def __post_init__(self):
        if int(self.bins) < 2:
            raise ConfigError(f"need at least 2 bins, got {self.bins}")
        object.__setattr__(self, "strategy", BinStrategy(self.strategy))


def discretize(column, spec: DiscretizationSpec = DiscretizationSpec()) -> np.ndarray:
    x = np.asarray(column, dtype=float)
    if x.size == 0:
        raise ConfigError("cannot discretize an empty column")
    lo, hi = x.min(), x.max()
    if lo == hi:
        return np.zeros(x.shape, dtype=int)
    if spec.strategy is BinStrategy.EQUAL_WIDTH:
        bins = np.floor((x - lo) / (hi - lo) * spec.bins).astype(int)
        return np.minimum(bins, spec.bins - 1)
    edges = np.unique(np.quantile(x, np.linspace(0.0, 1.0, spec.bins + 1)))
    return np.searchsorted(edges[1:-1], x, side="right")


def contingency(a, b) -> np.ndarray:
    """Joint count table of two integer-coded variables (empty rows/columns dropped)."""
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1))
    np.add.at(table, (ai, bi), 1)
    return table


def _entropy_bits(counts) -> float:
    counts = np.asarray(counts, dtype=float).ravel()
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log2(p)).sum())


def chi_square_statistic(table) -> float:
    """Pearson chi-square of a contingency table, no continuity correction."""
    table = np.asarray(table, dtype=float)
    expected = table.sum(axis=1, keepdims=True) * table.sum(axis=0, keepdims=True) / table.sum()
    mask = expected > 0
    return float(((table - expected)[mask] ** 2 / expected[mask]).sum())


def information_gain(feature_bins, y) -> float:
    """H(C) - H(C | F) in bits."""
    table = contingency(feature_bins, y)
    n = table.sum()
    h_class = _entropy_bits(table.sum(axis=0))
    h_cond = sum(row.sum() / n * _entropy_bits(row) for row in table)
    return max(h_class - h_cond, 0.0)


def gain_ratio(feature_bins, y) -> float:
    h_feature = _entropy_bits(np.unique(feature_bins, return_counts=True)[1])
    if h_feature == 0:
        return 0.0
    return information_gain(feature_bins, y) / h_feature


def symmetrical_uncertainty(feature_bins, y) -> float:
    h_feature = _entropy_bits(np.unique(feature_bins, return_counts=True)[1])
    h_class = _entropy_bits(np.unique(y, return_counts=True)[1])
    denom = h_class + h_feature
    if denom == 0:
        return 0.0
    return 2.0 * information_gain(feature_bins, y) / denom


def abs_correlation(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc, yc = x - x.mean(), y - y.mean()
    denom = np.sqrt((xc**2).sum() * (yc**2).sum())
    if denom == 0:
        return 0.0
    return float(min(abs((xc * yc).sum()) / denom, 1.0))


def relieff_weights(x, y, k: int = 10) -> np.ndarray:
    """Multi-class ReliefF feature weights.

    Every sample is an anchor. Features are min-max scaled and distances are
    Manhattan; neighbours tied on distance are taken in sample-index order.
    Misses from class C are weighted by P(C) / (1 - P(class of anchor)).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y)
    m, d = x.shape
    classes, y_idx, counts = np.unique(y, return_inverse=True, return_counts=True)
    if classes.size < 2:
        raise DegenerateInput("ReliefF needs at least two classes")
    span = x.max(axis=0) - x.min(axis=0)
    span[span == 0] = 1.0
    xs = (x - x.min(axis=0)) / span
    priors = counts / m

    weights = np.zeros(d)
    for i in range(m):
        diff = np.abs(xs - xs[i])
        dist = diff.sum(axis=1)
        ci = y_idx[i]
        for c in range(classes.size):
            members = np.flatnonzero(y_idx == c)
            if c == ci:
                members = members[members != i]
            kc = min(k, members.size)
            if kc == 0:
                continue
            nearest = members[np.argsort(dist[members], kind="stable")[:kc]]
            contrib = diff[nearest].sum(axis=0) / kc
            if c == ci:
                weights -= contrib
            else:
                weights += priors[c] / (1.0 - priors[ci]) * contrib
    return weights / m


def baseline_scores(train: Dataset, method: BaselineMethod,
                    disc: DiscretizationSpec = DiscretizationSpec()) -> np.ndarray:
    method = BaselineMethod(method)
    y = train.y
    if np.unique(y).size < 2:
        raise DegenerateInput(f"{method.value} needs at least two classes in the data")
    x = train.values
    if method is BaselineMethod.RELIEFF:
        return relieff_weights(x, y)
    if method is BaselineMethod.CORRELATION:
        return np.array([abs_correlation(x[:, j], y) for j in range(x.shape[1])])
    score = {
        BaselineMethod.CHI_SQUARE: lambda f: chi_square_statistic(contingency(f, y)),
        BaselineMethod.INFO_GAIN: lambda f: information_gain(f, y),
        BaselineMethod.GAIN_RATIO: lambda f: gain_ratio(f, y),
        BaselineMethod.SYMMETRICAL_UNCERTAINTY: lambda f: symmetrical_uncertainty(f, y),
    }[method]
    return np.array([score(discretize(x[:, j], disc)) for j in range(x.shape[1])])


def baseline_rank(train: Dataset, method: BaselineMethod,
                  disc: DiscretizationSpec = DiscretizationSpec()) -> FeatureRanking:
    method = BaselineMethod(method)
    return FeatureRanking.from_scores(baseline_scores(train, method, disc),
                                      Direction.HIGHER_IS_BETTER, method.value)
