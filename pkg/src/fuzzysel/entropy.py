"""Fuzzy entropy of similarity-matrix columns and the resulting feature rankings."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import DomainError, EmptyColumn
from .fuzzy import SimilarityMatrix


class EntropyKind(enum.Enum):
    LUCA = "luca"
    PARKASH = "parkash"
    KOSKO = "kosko"


class Direction(enum.Enum):
    LOWER_IS_BETTER = "lower"
    HIGHER_IS_BETTER = "higher"


class RemovalOrder(enum.Enum):
    LOWEST_FIRST = "lowest-first"
    HIGHEST_FIRST = "highest-first"


def entropy_columns(memberships, kind: EntropyKind) -> np.ndarray:
    """Fuzzy entropy of every column of a 2-D membership array.

    Luca uses natural logs with ``0 log 0 = 0``; Kosko's ratio is taken as 0
    when both sums vanish.
    """
    P = np.asarray(memberships, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if P.shape[0] == 0:
        raise EmptyColumn("entropy of an empty column is undefined")
    if np.any(~((P >= 0.0) & (P <= 1.0))):
        raise DomainError("memberships must lie in [0, 1]")
    Q = 1.0 - P
    kind = EntropyKind(kind)
    if kind is EntropyKind.LUCA:
        return -(xlogy(P, P) + xlogy(Q, Q)).sum(axis=0)
    if kind is EntropyKind.PARKASH:
        return (np.sin(np.pi * P / 2) + np.sin(np.pi * Q / 2) - 1.0).sum(axis=0)
    over = np.minimum(P, Q).sum(axis=0)
    under = np.maximum(P, Q).sum(axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(under > 0, over / np.where(under > 0, under, 1.0), 0.0)


def fuzzy_entropy(column, kind: EntropyKind) -> float:
    column = np.asarray(column, dtype=float)
    if column.ndim != 1:
        raise DomainError("expected a 1-D column")
    return float(entropy_columns(column, kind)[0])


@dataclass(frozen=True, eq=False)
class FeatureRanking:
    """Feature scores plus the order they sort into.

    ``order`` lists feature indices best-first according to ``direction``;
    ties go to the lower feature index.
    """

    order: np.ndarray
    scores: np.ndarray
    direction: Direction
    method: str = ""

    @classmethod
    def from_scores(cls, scores, direction: Direction, method: str = "") -> "FeatureRanking":
        scores = np.array(scores, dtype=float)
        key = scores if direction is Direction.LOWER_IS_BETTER else -scores
        order = np.argsort(key, kind="stable")
        scores.setflags(write=False)
        order.setflags(write=False)
        return cls(order, scores, direction, method)

    @property
    def n_features(self) -> int:
        return self.scores.shape[0]

    def ranks(self) -> np.ndarray:
        """1-based rank of every feature, aligned to original indices."""
        r = np.empty(self.n_features, dtype=int)
        r[self.order] = np.arange(1, self.n_features + 1)
        return r

    def to_csv(self, path_or_file, feature_names=None):
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            names = feature_names or [f"f{j}" for j in range(self.n_features)]
            w.writerow(["method", "feature_index", "feature_name", "score", "rank"])
            ranks = self.ranks()
            for j in self.order:
                w.writerow([self.method, int(j), names[j], f"{self.scores[j]:.6g}", int(ranks[j])])
        finally:
            if own:
                fh.close()


def rank_features(matrix: SimilarityMatrix, kind: EntropyKind) -> FeatureRanking:
    """Entropy score per feature, sorted ascending."""
    kind = EntropyKind(kind)
    scores = entropy_columns(matrix.entries, kind)
    return FeatureRanking.from_scores(scores, Direction.LOWER_IS_BETTER, kind.value)


def removal_list(ranking: FeatureRanking, order: RemovalOrder) -> np.ndarray:
    """Features in the order they get removed; ties removed lowest index first."""
    order = RemovalOrder(order)
    key = ranking.scores if order is RemovalOrder.LOWEST_FIRST else -ranking.scores
    return np.argsort(key, kind="stable")


def removal_sequence(ranking: FeatureRanking, order: RemovalOrder) -> list[frozenset]:
    """Surviving feature sets after removing 0, 1, ..., D-1 features."""
    removed = removal_list(ranking, order)
    return [frozenset(int(j) for j in removed[t:]) for t in range(ranking.n_features)]


def survivors(ranking: FeatureRanking, order: RemovalOrder, n_removed: int) -> np.ndarray:
    """Sorted indices of the features left after ``n_removed`` removals."""
    return np.sort(removal_list(ranking, order)[n_removed:])
