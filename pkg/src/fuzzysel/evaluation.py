"""Repeated random two-half split experiments.

Every repeat draws its own split from a seed derived from
``(master_seed, repeat_index)``, so repeats are independent of execution
order and can be fanned out over worker processes. Aggregates are always
reduced in repeat-index order.
"""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import stats

from .baselines import BaselineMethod, DiscretizationSpec, baseline_rank
from .classify import aggregate
from .data import (
    Dataset,
    SplitSpec,
    apply_normalization,
    fit_normalization,
    split_indices,
)
from .entropy import EntropyKind, FeatureRanking, RemovalOrder, rank_features, removal_list
from .errors import ConfigError, ConstantFeature, DegenerateSplit, EmptyClass, LengthMismatch
from .fuzzy import MeanKind, ideal_vector_set, similarity_matrix, similarity_tensor

log = logging.getLogger(__name__)

DEFAULT_P_GRID = tuple(np.round(np.arange(0.5, 6.01, 0.5), 10))
ALL_COMBOS = tuple((i, c) for i in MeanKind for c in MeanKind)
MAX_REDRAWS = 100


class MatrixSource(enum.Enum):
    TRAIN = "train"
    TEST = "test"


def combo_tag(ideal_mean: MeanKind, classifier_mean: MeanKind) -> str:
    return f"{MeanKind(ideal_mean).letter}-{MeanKind(classifier_mean).letter}"


def parse_combo(tag: str) -> tuple[MeanKind, MeanKind]:
    for ideal, clf in ALL_COMBOS:
        if combo_tag(ideal, clf) == tag.upper():
            return ideal, clf
    raise ConfigError(f"unknown combination {tag!r}; expected one of "
                      + ", ".join(combo_tag(*c) for c in ALL_COMBOS))


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    dataset: Dataset
    repeats: int = 1000
    master_seed: int = 0
    ideal_mean: MeanKind = MeanKind.GEOMETRIC
    classifier_mean: MeanKind = MeanKind.GEOMETRIC
    entropy_kind: EntropyKind = EntropyKind.LUCA
    p: float = 2.0
    removal_order: RemovalOrder = RemovalOrder.LOWEST_FIRST
    matrix_source: MatrixSource = MatrixSource.TRAIN
    clip_percentile: float = 0.0
    train_fraction: float = 0.5
    stratified: bool = False
    workers: int = 1

    def __post_init__(self):
        if int(self.repeats) < 1:
            raise ConfigError(f"repeats must be >= 1, got {self.repeats}")
        if not 0 <= int(self.master_seed) < 2**64:
            raise ConfigError("master_seed must be an unsigned 64-bit integer")
        if not self.p > 0:
            raise ConfigError(f"p must be positive, got {self.p}")
        for name, kind in [("ideal_mean", MeanKind), ("classifier_mean", MeanKind),
                           ("entropy_kind", EntropyKind), ("removal_order", RemovalOrder),
                           ("matrix_source", MatrixSource)]:
            object.__setattr__(self, name, kind(getattr(self, name)))

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset.name,
            "dataset_fingerprint": self.dataset.fingerprint(),
            "repeats": int(self.repeats),
            "master_seed": int(self.master_seed),
            "ideal_mean": self.ideal_mean.value,
            "classifier_mean": self.classifier_mean.value,
            "entropy_kind": self.entropy_kind.value,
            "p": float(self.p),
            "removal_order": self.removal_order.value,
            "matrix_source": self.matrix_source.value,
            "clip_percentile": float(self.clip_percentile),
            "train_fraction": float(self.train_fraction),
            "stratified": bool(self.stratified),
        }


def derive_seed(master_seed: int, repeat_index: int, attempt: int = 0) -> int:
    """64-bit split seed from a counter-based hash of its coordinates."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(repeat_index), int(attempt)))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True, eq=False)
class PreparedSplit:
    seed: int
    train_indices: np.ndarray
    test_indices: np.ndarray
    train_raw: Dataset
    train: Dataset
    test: Dataset


def prepare_split(config: ExperimentConfig, repeat_index: int) -> PreparedSplit:
    """Split, then fit normalization on the training half and apply it to both.

    A split whose training half misses a class or has a constant feature is
    redrawn with the next derived seed.
    """
    data = config.dataset
    for attempt in range(MAX_REDRAWS):
        seed = derive_seed(config.master_seed, repeat_index, attempt)
        spec = SplitSpec(seed, config.train_fraction, config.stratified)
        try:
            tr, te = split_indices(data.y, spec)
            if np.unique(data.y[tr]).size < data.n_classes:
                raise EmptyClass(data.class_order[np.setdiff1d(np.arange(data.n_classes), data.y[tr])[0]])
            train_raw = data.subset(tr)
            params = fit_normalization(train_raw, config.clip_percentile)
        except (DegenerateSplit, EmptyClass, ConstantFeature) as exc:
            log.warning("repeat %d attempt %d degenerate (%s); redrawing", repeat_index, attempt, exc)
            continue
        return PreparedSplit(seed, tr, te, train_raw,
                             apply_normalization(params, train_raw),
                             apply_normalization(params, data.subset(te)))
    raise DegenerateSplit(f"repeat {repeat_index}: no usable split after {MAX_REDRAWS} draws")


def _entropy_ranking(prep: PreparedSplit, config: ExperimentConfig, ideals,
                     kind: EntropyKind | None = None) -> FeatureRanking:
    source = prep.train if config.matrix_source is MatrixSource.TRAIN else prep.test
    return rank_features(similarity_matrix(source, ideals, config.p),
                         kind or config.entropy_kind)


def _subset_predictions(sim: np.ndarray, subsets, kind: MeanKind) -> np.ndarray:
    """Predicted class indices for each feature subset, shape (len(subsets), M)."""
    return np.stack([np.argmax(aggregate(sim[:, :, s], kind), axis=1) for s in subsets])


@dataclass(frozen=True, eq=False)
class RepeatRecord:
    repeat_index: int
    seed: int
    test_indices: np.ndarray
    ranking: FeatureRanking
    removal: np.ndarray        # feature removed at step t
    accuracies: np.ndarray     # accuracy after removing t features, t = 0..D-1
    predictions: np.ndarray    # (D, M_test) predicted class indices
    truth: np.ndarray


def run_repeat(config: ExperimentConfig, repeat_index: int) -> RepeatRecord:
    """One full pass: normalize, rank by fuzzy entropy, classify every removal count."""
    prep = prepare_split(config, repeat_index)
    ideals = ideal_vector_set(prep.train, config.ideal_mean)
    ranking = _entropy_ranking(prep, config, ideals)
    removed = removal_list(ranking, config.removal_order)
    d = ranking.n_features
    sim = similarity_tensor(prep.test.values, ideals.vectors, config.p)
    preds = _subset_predictions(sim, [np.sort(removed[t:]) for t in range(d)],
                                config.classifier_mean)
    truth = prep.test.y
    return RepeatRecord(repeat_index, prep.seed, prep.test_indices, ranking, removed,
                        (preds == truth).mean(axis=1), preds, truth)


def _map_repeats(fn, config: ExperimentConfig, repeats=None):
    indices = range(config.repeats if repeats is None else repeats)
    if config.workers <= 1:
        return [fn(config, i) for i in indices]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(fn, [config] * len(indices), indices,
                             chunksize=max(1, len(indices) // (4 * config.workers))))


def run_repeats(config: ExperimentConfig) -> list[RepeatRecord]:
    return _map_repeats(run_repeat, config)


@dataclass(frozen=True, eq=False)
class AccuracyCurve:
    x_axis: np.ndarray
    mean_accuracy: np.ndarray
    std_accuracy: np.ndarray
    config_tag: str

    def __post_init__(self):
        if not len(self.x_axis) == len(self.mean_accuracy) == len(self.std_accuracy):
            raise LengthMismatch("curve arrays must be aligned")

    @classmethod
    def from_runs(cls, x_axis, per_repeat: np.ndarray, tag: str) -> "AccuracyCurve":
        per_repeat = np.asarray(per_repeat, dtype=float)
        return cls(np.asarray(x_axis), per_repeat.mean(axis=0), per_repeat.std(axis=0), tag)

    def argmax(self) -> int:
        return int(np.argmax(self.mean_accuracy))


def removal_curve(config: ExperimentConfig, records=None) -> AccuracyCurve:
    """Mean test accuracy against the number of features removed."""
    records = run_repeats(config) if records is None else records
    acc = np.stack([r.accuracies for r in records])
    return AccuracyCurve.from_runs(np.arange(acc.shape[1]), acc,
                                   config.removal_order.value)


def _sweep_repeat(config: ExperimentConfig, repeat_index: int, p_grid, combos) -> np.ndarray:
    prep = prepare_split(config, repeat_index)
    ideals = {kind: ideal_vector_set(prep.train, kind).vectors
              for kind in {ideal for ideal, _ in combos}}
    out = np.empty((len(combos), len(p_grid)))
    truth = prep.test.y
    for b, p in enumerate(p_grid):
        sims = {kind: similarity_tensor(prep.test.values, v, p) for kind, v in ideals.items()}
        for a, (ideal, clf) in enumerate(combos):
            out[a, b] = (np.argmax(aggregate(sims[ideal], clf), axis=1) == truth).mean()
    return out


def sweep_runs(config: ExperimentConfig, p_grid=DEFAULT_P_GRID, combos=ALL_COMBOS) -> np.ndarray:
    """Per-repeat full-feature accuracies, shape (repeats, combos, p values)."""
    p_grid = tuple(float(p) for p in p_grid)
    if not p_grid:
        raise ConfigError("p grid is empty")
    if any(not p > 0 for p in p_grid):
        raise ConfigError("every p must be positive")
    combos = tuple((MeanKind(i), MeanKind(c)) for i, c in combos)
    return np.stack(_map_repeats(partial(_sweep_repeat, p_grid=p_grid, combos=combos), config))


def sweep_p(config: ExperimentConfig, p_grid=DEFAULT_P_GRID, combos=ALL_COMBOS,
            runs=None) -> list[AccuracyCurve]:
    """Full-feature accuracy against p for each (ideal mean, classifier mean) pair."""
    runs = sweep_runs(config, p_grid, combos) if runs is None else runs
    return [AccuracyCurve.from_runs(np.array(p_grid, dtype=float), runs[:, a, :], combo_tag(*combo))
            for a, combo in enumerate(combos)]


@dataclass(frozen=True, eq=False)
class AgreementResult:
    kinds: tuple
    mean_scores: dict              # kind -> min-max normalized mean entropy per feature
    reference_order: np.ndarray    # features sorted high-to-low by the first kind
    spearman: np.ndarray           # kinds x kinds rank correlations
    raw_scores: np.ndarray         # (repeats, kinds, D) entropies


def _agreement_repeat(config: ExperimentConfig, repeat_index: int, kinds) -> np.ndarray:
    prep = prepare_split(config, repeat_index)
    ideals = ideal_vector_set(prep.train, config.ideal_mean)
    source = prep.train if config.matrix_source is MatrixSource.TRAIN else prep.test
    P = similarity_matrix(source, ideals, config.p)
    return np.stack([rank_features(P, k).scores for k in kinds])


def _minmax(a):
    a = np.asarray(a, dtype=float)
    span = a.max() - a.min()
    return np.zeros_like(a) if span == 0 else (a - a.min()) / span


def ranking_agreement(config: ExperimentConfig,
                      kinds=(EntropyKind.LUCA, EntropyKind.PARKASH, EntropyKind.KOSKO)) -> AgreementResult:
    """Compare the feature orderings produced by different entropy functions.

    Raw entropies are averaged over repeats, then min-max scaled per kind.
    The first kind in ``kinds`` is the reference ordering.
    """
    kinds = tuple(EntropyKind(k) for k in kinds)
    runs = np.stack(_map_repeats(partial(_agreement_repeat, kinds=kinds), config))
    means = runs.mean(axis=0)
    scaled = {k: _minmax(means[a]) for a, k in enumerate(kinds)}
    ref = np.argsort(-means[0], kind="stable")
    rho = np.ones((len(kinds), len(kinds)))
    for a in range(len(kinds)):
        for b in range(a + 1, len(kinds)):
            r = stats.spearmanr(means[a], means[b])[0] if means.shape[1] > 1 else 1.0
            rho[a, b] = rho[b, a] = r
    return AgreementResult(kinds, scaled, ref, rho, runs)


class McNemarMethod(enum.Enum):
    EXACT_BINOMIAL = "exact"
    CHI_SQUARE_CC = "chi2-cc"


@dataclass(frozen=True)
class McNemarResult:
    b: int
    c: int
    statistic: float
    p_value: float
    method: McNemarMethod


EXACT_THRESHOLD = 25


def mcnemar_counts(b: int, c: int, method: McNemarMethod | None = None) -> McNemarResult:
    """McNemar test from discordant counts.

    ``b`` counts pairs where A is right and B wrong, ``c`` the reverse.
    Without an explicit method the exact binomial test is used when
    ``b + c < 25`` and the continuity-corrected chi-square otherwise.
    """
    b, c = int(b), int(c)
    if b < 0 or c < 0:
        raise ConfigError("discordant counts must be non-negative")
    n = b + c
    if method is None:
        method = McNemarMethod.EXACT_BINOMIAL if n < EXACT_THRESHOLD else McNemarMethod.CHI_SQUARE_CC
    method = McNemarMethod(method)
    if n == 0:
        stat = 0.0 if method is McNemarMethod.CHI_SQUARE_CC else 0
        return McNemarResult(b, c, float(stat), 1.0, method)
    if method is McNemarMethod.EXACT_BINOMIAL:
        stat = float(min(b, c))
        p = 2.0 * stats.binom.cdf(min(b, c), n, 0.5)
    else:
        stat = (abs(b - c) - 1.0) ** 2 / n if b != c else 0.0
        p = stats.chi2.sf(stat, 1)
    return McNemarResult(b, c, float(stat), float(min(p, 1.0)), method)


def mcnemar(correct_a, correct_b, method: McNemarMethod | None = None) -> McNemarResult:
    a = np.asarray(correct_a, dtype=bool)
    b = np.asarray(correct_b, dtype=bool)
    if a.shape != b.shape:
        raise LengthMismatch(f"correctness sequences differ in shape: {a.shape} vs {b.shape}")
    return mcnemar_counts(int(np.sum(a & ~b)), int(np.sum(~a & b)), method)


PROPOSED = "proposed"


@dataclass(frozen=True)
class ComparisonRow:
    method: str
    accuracy: float
    n_selected: int
    n_removed: int
    mcnemar: McNemarResult | None


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    dataset: str
    n_features: int
    reference_count: int               # S, the proposed method's best number of selected features
    rows: tuple
    curves: dict                        # method -> AccuracyCurve over number of selected features
    accuracies: np.ndarray              # (repeats, methods, D) accuracy with k = 1..D features


def _compare_repeat(config: ExperimentConfig, repeat_index: int, methods, disc) -> np.ndarray:
    """Correctness of every method at every selected-feature count, (methods, D, M_test)."""
    prep = prepare_split(config, repeat_index)
    ideals = ideal_vector_set(prep.train, config.ideal_mean)
    d = prep.train.n_features
    sim = similarity_tensor(prep.test.values, ideals.vectors, config.p)
    out = []
    for method in methods:
        if method == PROPOSED:
            removed = removal_list(_entropy_ranking(prep, config, ideals), config.removal_order)
            keep_order = removed[::-1]
        else:
            keep_order = baseline_rank(prep.train_raw, method, disc).order
        subsets = [np.sort(keep_order[:k]) for k in range(1, d + 1)]
        out.append(_subset_predictions(sim, subsets, config.classifier_mean) == prep.test.y)
    return np.stack(out)


def compare_methods(config: ExperimentConfig, baselines=tuple(BaselineMethod),
                    disc: DiscretizationSpec = DiscretizationSpec(),
                    alpha_method: McNemarMethod | None = None) -> ComparisonReport:
    """Accuracy of the fuzzy-entropy ranker against classical filters.

    The proposed method's best feature count S is the reference; every
    baseline reports its best mean accuracy using at most S features. McNemar
    tests pool the per-sample correctness of all repeats at those operating
    points.
    """
    methods = (PROPOSED,) + tuple(BaselineMethod(b) for b in baselines)
    correct = np.stack(_map_repeats(partial(_compare_repeat, methods=methods, disc=disc), config))
    # correct: (repeats, methods, D, M_test)
    acc = correct.mean(axis=3)
    d = acc.shape[2]
    counts = np.arange(1, d + 1)
    names = [m if m == PROPOSED else m.value for m in methods]
    curves = {name: AccuracyCurve.from_runs(counts, acc[:, a, :], name)
              for a, name in enumerate(names)}
    s_idx = curves[PROPOSED].argmax()
    ref = correct[:, 0, s_idx, :].ravel()
    rows = [ComparisonRow(PROPOSED, float(curves[PROPOSED].mean_accuracy[s_idx]),
                          int(counts[s_idx]), int(d - counts[s_idx]), None)]
    for a, name in enumerate(names[1:], start=1):
        k = int(np.argmax(curves[name].mean_accuracy[: s_idx + 1]))
        test = mcnemar(ref, correct[:, a, k, :].ravel(), alpha_method)
        rows.append(ComparisonRow(name, float(curves[name].mean_accuracy[k]),
                                  int(counts[k]), int(d - counts[k]), test))
    return ComparisonReport(config.dataset.name, d, int(counts[s_idx]), tuple(rows), curves, acc)

