"""Per-class ideal vectors and Łukasiewicz similarities.

An ideal vector summarises one class by a per-feature mean of its
normalized training values. Similarity between a feature value ``x`` and an
ideal component ``v`` is the generalized Łukasiewicz form
``(1 - |x**p - v**p|) ** (1/p)``.
"""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DimensionMismatch, DomainError, EmptyClass


class MeanKind(enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"

    @property
    def letter(self) -> str:
        return self.value[0].upper()


def mean_along(values, kind: MeanKind, axis=0) -> np.ndarray:
    """Arithmetic, geometric or harmonic mean of strictly positive values.

    The geometric mean goes through logs so long products cannot underflow.
    Each slice is reduced as its own contiguous run, so a column's mean does
    not depend on which other columns sit next to it.
    """
    values = np.ascontiguousarray(np.moveaxis(np.asarray(values, dtype=float), axis, -1))
    axis = -1
    kind = MeanKind(kind)
    if kind is MeanKind.ARITHMETIC:
        return values.mean(axis=axis)
    if np.any(values <= 0):
        raise DomainError(f"{kind.value} mean needs strictly positive values")
    if kind is MeanKind.GEOMETRIC:
        return np.exp(np.log(values).mean(axis=axis))
    return 1.0 / (1.0 / values).mean(axis=axis)


def _check_unit(a, what):
    a = np.asarray(a, dtype=float)
    if np.any(~((a >= 0.0) & (a <= 1.0))):
        raise DomainError(f"{what} must lie in [0, 1]")
    return a


def _check_p(p):
    if not p > 0 or not np.isfinite(p):
        raise DomainError(f"exponent p must be positive and finite, got {p}")
    return float(p)


@dataclass(frozen=True, eq=False)
class IdealVectorSet:
    vectors: np.ndarray
    class_order: tuple
    mean_kind: MeanKind

    @property
    def n_classes(self) -> int:
        return self.vectors.shape[0]

    def restrict(self, features) -> "IdealVectorSet":
        """Ideal vectors on a feature subset (each component depends on its feature only)."""
        return IdealVectorSet(self.vectors[:, np.asarray(features, dtype=np.intp)],
                              self.class_order, self.mean_kind)


def ideal_vector_set(train: Dataset, kind: MeanKind) -> IdealVectorSet:
    kind = MeanKind(kind)
    x = _check_unit(train.values, "normalized training values")
    vectors = np.empty((train.n_classes, train.n_features))
    for k, label in enumerate(train.class_order):
        members = x[train.y == k]
        if members.shape[0] == 0:
            raise EmptyClass(label)
        vectors[k] = mean_along(members, kind, axis=0)
    vectors.setflags(write=False)
    return IdealVectorSet(vectors, train.class_order, kind)


def similarity(x, v, p) -> np.ndarray:
    """Element-wise Łukasiewicz similarity with numpy broadcasting."""
    x = _check_unit(x, "x")
    v = _check_unit(v, "v")
    p = _check_p(p)
    radicand = np.clip(1.0 - np.abs(x**p - v**p), 0.0, 1.0)
    return radicand ** (1.0 / p)


def lukasiewicz_similarity(x: float, v: float, p: float) -> float:
    return float(similarity(x, v, p))


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Stacked sample-vs-ideal similarities, one row per (sample, class) pair.

    Rows run over all classes of sample 0, then all classes of sample 1, ...
    ``row_index[r]`` gives the ``(sample, class)`` pair of row ``r``.
    """

    entries: np.ndarray
    row_index: np.ndarray
    p: float

    def column(self, j) -> np.ndarray:
        return self.entries[:, j]

    def to_csv(self, path_or_file, feature_names=None):
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            d = self.entries.shape[1]
            names = list(feature_names) if feature_names is not None else [f"f{j}" for j in range(d)]
            w.writerow(["sample", "class"] + names)
            for (i, k), row in zip(self.row_index, self.entries):
                w.writerow([int(i), int(k)] + [repr(float(v)) for v in row])
        finally:
            if own:
                fh.close()


def similarity_tensor(x, ideals: np.ndarray, p: float) -> np.ndarray:
    """Per-feature similarities of every sample to every class, shape (M, N, D)."""
    x = np.asarray(x, dtype=float)
    ideals = np.asarray(ideals, dtype=float)
    if x.ndim != 2 or ideals.ndim != 2 or x.shape[1] != ideals.shape[1]:
        raise DimensionMismatch(
            f"samples {x.shape} and ideal vectors {ideals.shape} disagree on features")
    return similarity(x[:, None, :], ideals[None, :, :], p)


def similarity_matrix(samples: Dataset, ideals: IdealVectorSet, p: float) -> SimilarityMatrix:
    s = similarity_tensor(samples.values, ideals.vectors, p)
    m, n, d = s.shape
    entries = s.reshape(m * n, d)
    entries.setflags(write=False)
    ii, kk = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
    row_index = np.column_stack([ii.ravel(), kk.ravel()])
    return SimilarityMatrix(entries, row_index, float(p))
