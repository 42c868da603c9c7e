"""Tabular dataset container, CSV loading, min-max normalization and splits.

Every value that reaches the fuzzy machinery must lie in ``[EPS, 1]``:
normalization is fitted on the training partition only and then applied to
both partitions, clamping out-of-range test values.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConfigError,
    ConstantFeature,
    DataError,
    DegenerateSplit,
    DimensionMismatch,
    EmptyDataset,
    MalformedRow,
)

EPS = 1e-6
MISSING_MARKERS = frozenset({"?", ""})


def _frozen(a, dtype=None):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Labeled sample-by-feature matrix.

    ``class_order`` fixes the class index of each label (first-appearance
    order unless given explicitly); ``y`` holds those indices.
    """

    values: np.ndarray
    labels: tuple
    feature_names: tuple
    name: str = ""
    class_order: tuple = None
    y: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        values = _frozen(self.values, dtype=float)
        if values.ndim != 2:
            raise DimensionMismatch(f"values must be 2-D, got shape {values.shape}")
        labels = tuple(self.labels)
        names = tuple(str(n) for n in self.feature_names)
        if len(labels) != values.shape[0]:
            raise DimensionMismatch(
                f"{len(labels)} labels for {values.shape[0]} samples")
        if len(names) != values.shape[1]:
            raise DimensionMismatch(
                f"{len(names)} feature names for {values.shape[1]} features")
        if not np.all(np.isfinite(values)):
            raise DataError("values contain missing or non-finite entries")
        order = self.class_order
        if order is None:
            order = tuple(dict.fromkeys(labels))
        else:
            order = tuple(order)
            unknown = set(labels) - set(order)
            if unknown:
                raise ConfigError(f"labels {sorted(map(str, unknown))} not in class_order")
        index = {c: k for k, c in enumerate(order)}
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "class_order", order)
        object.__setattr__(self, "y", _frozen([index[c] for c in labels], dtype=np.intp))

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_order)

    def subset(self, indices) -> "Dataset":
        """Rows ``indices`` (in the given order); the class order is kept."""
        indices = np.asarray(indices, dtype=np.intp)
        return Dataset(self.values[indices], [self.labels[i] for i in indices],
                       self.feature_names, self.name, self.class_order)

    def select_features(self, features) -> "Dataset":
        features = np.asarray(features, dtype=np.intp)
        return Dataset(self.values[:, features], self.labels,
                       [self.feature_names[j] for j in features], self.name,
                       self.class_order)

    def with_values(self, values) -> "Dataset":
        return Dataset(values, self.labels, self.feature_names, self.name,
                       self.class_order)

    def fingerprint(self) -> str:
        """SHA-256 over values, labels and feature names."""
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.values).tobytes())
        h.update("\x1f".join(map(str, self.labels)).encode())
        h.update("\x1f".join(self.feature_names).encode())
        return h.hexdigest()


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, label_column, drop_columns: Iterable = (), *,
             header: bool | None = None, name: str | None = None) -> Dataset:
    """Read a CSV file into a :class:`Dataset`.

    ``label_column`` is a column name (requires a header row) or a 0-based
    column index. ``drop_columns`` accepts names or indices. Rows holding a
    missing marker ("?" or an empty cell) in any kept column are removed.
    With ``header=None`` the first row is treated as a header when
    ``label_column`` is a name, or when any of its feature cells is not
    numeric.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such data file: {path}")
    with path.open(newline="") as fh:
        rows = [(i + 1, [c.strip() for c in r]) for i, r in enumerate(csv.reader(fh))
                if r and any(c.strip() for c in r)]
    if not rows:
        raise EmptyDataset(f"{path} contains no rows")

    first = rows[0][1]
    width = len(first)
    drop_columns = set(drop_columns)
    if header is None:
        if isinstance(label_column, str) or any(isinstance(c, str) for c in drop_columns):
            header = True
        else:
            header = any(not _is_number(c) and c not in MISSING_MARKERS
                         for j, c in enumerate(first) if j != label_column
                         and j not in drop_columns)
    if header:
        columns = list(first)
        rows = rows[1:]
    else:
        columns = [f"x{j}" for j in range(width)]

    def resolve(col):
        if isinstance(col, (int, np.integer)):
            if not -width <= col < width:
                raise ConfigError(f"column index {col} out of range (0..{width - 1})")
            return int(col) % width
        if col not in columns:
            raise ConfigError(f"column {col!r} not found; available: {', '.join(columns)}")
        return columns.index(col)

    label_idx = resolve(label_column)
    dropped = {resolve(c) for c in drop_columns}
    keep = [j for j in range(width) if j != label_idx and j not in dropped]
    if not keep:
        raise ConfigError("no feature columns left after dropping")

    values, labels = [], []
    for line, row in rows:
        if len(row) != width:
            raise MalformedRow(line, f"expected {width} cells, found {len(row)}")
        label = row[label_idx]
        cells = [row[j] for j in keep]
        if label in MISSING_MARKERS or any(c in MISSING_MARKERS for c in cells):
            continue
        try:
            values.append([float(c) for c in cells])
        except ValueError:
            bad = next(c for c in cells if not _is_number(c))
            raise MalformedRow(line, f"cell {bad!r} is neither numeric nor a missing marker") from None
        labels.append(label)
    if not values:
        raise EmptyDataset(f"{path}: every row was removed")
    return Dataset(np.array(values), labels, [columns[j] for j in keep],
                   name if name is not None else path.stem)


@dataclass(frozen=True, eq=False)
class NormalizationParams:
    per_feature_min: np.ndarray
    per_feature_max: np.ndarray
    clip_percentile: float = 0.0

    def __post_init__(self):
        lo = _frozen(self.per_feature_min, dtype=float)
        hi = _frozen(self.per_feature_max, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise DimensionMismatch("min/max vectors must be 1-D and aligned")
        bad = np.flatnonzero(~(lo < hi))
        if bad.size:
            raise ConstantFeature(int(bad[0]))
        object.__setattr__(self, "per_feature_min", lo)
        object.__setattr__(self, "per_feature_max", hi)


def fit_normalization(train: Dataset, clip_percentile: float = 0.0) -> NormalizationParams:
    """Per-feature min/max of the training data.

    A positive ``clip_percentile`` q replaces the extremes by the q-th and
    (100 - q)-th percentiles (linear interpolation) so single outliers do not
    stretch the scale.
    """
    if not 0.0 <= clip_percentile < 50.0:
        raise ConfigError(f"clip_percentile must be in [0, 50), got {clip_percentile}")
    x = train.values
    if x.shape[0] == 0:
        raise EmptyDataset("cannot fit normalization on an empty dataset")
    if clip_percentile == 0:
        lo, hi = x.min(axis=0), x.max(axis=0)
    else:
        lo, hi = np.percentile(x, [clip_percentile, 100.0 - clip_percentile], axis=0)
    return NormalizationParams(lo, hi, float(clip_percentile))


def normalize_values(params: NormalizationParams, values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.shape[-1] != params.per_feature_min.shape[0]:
        raise DimensionMismatch(
            f"data has {values.shape[-1]} features, normalization expects "
            f"{params.per_feature_min.shape[0]}")
    lo, hi = params.per_feature_min, params.per_feature_max
    return np.clip((values - lo) / (hi - lo), EPS, 1.0)


def apply_normalization(params: NormalizationParams, data: Dataset) -> Dataset:
    """Map every value into ``[EPS, 1]`` with the fitted min/max."""
    return data.with_values(normalize_values(params, data.values))


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    train_fraction: float = 0.5
    stratified: bool = False

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(f"train_fraction must be in (0, 1), got {self.train_fraction}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must be an unsigned 64-bit integer")


def _round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


def split_indices(y: Sequence[int], spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Sorted train/test row indices for class-index vector ``y``."""
    y = np.asarray(y)
    m = y.shape[0]
    rng = np.random.Generator(np.random.PCG64(int(spec.seed)))
    if spec.stratified:
        train = []
        for k in np.unique(y):
            members = np.flatnonzero(y == k)
            n_train = _round_half_up(spec.train_fraction * members.size)
            if n_train < 1 or n_train >= members.size:
                raise DegenerateSplit(
                    f"class index {k} with {members.size} samples cannot appear in both partitions")
            train.append(rng.permutation(members)[:n_train])
        train = np.sort(np.concatenate(train))
    else:
        n_train = _round_half_up(spec.train_fraction * m)
        if n_train < 1 or n_train >= m:
            raise DegenerateSplit(f"cannot split {m} samples with fraction {spec.train_fraction}")
        train = np.sort(rng.permutation(m)[:n_train])
    mask = np.zeros(m, dtype=bool)
    mask[train] = True
    return train, np.flatnonzero(~mask)


def split(data: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Seeded random train/test partition; row order is preserved inside each part."""
    if data.n_samples < 2:
        raise DegenerateSplit("need at least two samples to split")
    train, test = split_indices(data.y, spec)
    return data.subset(train), data.subset(test)
