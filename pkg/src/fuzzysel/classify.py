"""Maximal-similarity classification over a selected feature subset."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import EPS, Dataset
from .errors import DimensionMismatch, DomainError, EmptySubset, LengthMismatch
from .fuzzy import IdealVectorSet, MeanKind, mean_along, similarity_tensor


@dataclass(frozen=True)
class ClassifierConfig:
    mean_kind: MeanKind = MeanKind.GEOMETRIC
    p: float = 2.0
    feature_subset: tuple | None = None  # None selects every feature

    def __post_init__(self):
        object.__setattr__(self, "mean_kind", MeanKind(self.mean_kind))
        if not self.p > 0:
            raise DomainError(f"p must be positive, got {self.p}")
        if self.feature_subset is not None:
            subset = tuple(sorted({int(j) for j in self.feature_subset}))
            if not subset:
                raise EmptySubset("feature subset is empty")
            object.__setattr__(self, "feature_subset", subset)

    def features(self, n_features: int) -> np.ndarray:
        if self.feature_subset is None:
            return np.arange(n_features)
        subset = np.asarray(self.feature_subset, dtype=np.intp)
        if subset[0] < 0 or subset[-1] >= n_features:
            raise DimensionMismatch(f"feature subset out of range for {n_features} features")
        return subset


@dataclass(frozen=True)
class Prediction:
    sample_index: int
    predicted_class: object
    class_scores: tuple


def aggregate(similarities, kind: MeanKind, axis=-1) -> np.ndarray:
    """Mean of per-feature similarities; floored at EPS for the geometric and
    harmonic forms so a zero similarity cannot blow them up."""
    kind = MeanKind(kind)
    s = np.asarray(similarities, dtype=float)
    if s.shape[axis] == 0:
        raise EmptySubset("cannot aggregate over zero features")
    if kind is not MeanKind.ARITHMETIC:
        s = np.maximum(s, EPS)
    return mean_along(s, kind, axis=axis)


def aggregate_similarity(x, v, config: ClassifierConfig) -> float:
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    if x.shape != v.shape or x.ndim != 1:
        raise DimensionMismatch(f"x {x.shape} and v {v.shape} must be aligned 1-D vectors")
    j = config.features(x.shape[0])
    s = similarity_tensor(x[None, j], v[None, j], config.p)[0, 0]
    return float(aggregate(s, config.mean_kind))


def class_scores(x, ideals: np.ndarray, config: ClassifierConfig) -> np.ndarray:
    """Aggregated similarity of every sample to every class, shape (M, N)."""
    x = np.asarray(x, dtype=float)
    ideals = np.asarray(ideals, dtype=float)
    if x.shape[1] != ideals.shape[1]:
        raise DimensionMismatch(
            f"samples have {x.shape[1]} features, ideal vectors {ideals.shape[1]}")
    j = config.features(x.shape[1])
    return aggregate(similarity_tensor(x[:, j], ideals[:, j], config.p), config.mean_kind)


def predict_indices(x, ideals: np.ndarray, config: ClassifierConfig) -> np.ndarray:
    """Class index with the largest score; ``argmax`` keeps the lowest index on ties."""
    return np.argmax(class_scores(x, ideals, config), axis=1)


def classify(test: Dataset, ideals: IdealVectorSet, config: ClassifierConfig) -> list[Prediction]:
    scores = class_scores(test.values, ideals.vectors, config)
    best = np.argmax(scores, axis=1)
    return [Prediction(i, ideals.class_order[k], tuple(float(s) for s in row))
            for i, (k, row) in enumerate(zip(best, scores))]


def accuracy(preds, truth) -> float:
    """Fraction of predictions matching ``truth``.

    ``preds`` may be :class:`Prediction` objects or bare labels.
    """
    predicted = [p.predicted_class if isinstance(p, Prediction) else p for p in preds]
    truth = list(truth)
    if len(predicted) != len(truth):
        raise LengthMismatch(f"{len(predicted)} predictions for {len(truth)} labels")
    if not truth:
        raise LengthMismatch("accuracy of zero predictions is undefined")
    return sum(a == b for a, b in zip(predicted, truth)) / len(truth)


def predictions_to_csv(path_or_file, preds, truth, class_order):
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["sample_index", "true_label", "predicted_label"]
                   + [f"score_{c}" for c in class_order])
        for pred, t in zip(preds, truth):
            w.writerow([pred.sample_index, t, pred.predicted_class]
                       + [f"{s:.6g}" for s in pred.class_scores])
    finally:
        if own:
            fh.close()
