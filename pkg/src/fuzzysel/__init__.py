"""Fuzzy-entropy feature ranking with a maximal-similarity classifier."""

from .baselines import BaselineMethod, DiscretizationSpec, baseline_rank, discretize
from .classify import (
    ClassifierConfig,
    Prediction,
    accuracy,
    aggregate_similarity,
    classify,
)
from .data import (
    EPS,
    Dataset,
    NormalizationParams,
    SplitSpec,
    apply_normalization,
    fit_normalization,
    load_csv,
    split,
)
from .entropy import (
    Direction,
    EntropyKind,
    FeatureRanking,
    RemovalOrder,
    fuzzy_entropy,
    rank_features,
    removal_sequence,
)
from .evaluation import (
    AccuracyCurve,
    ExperimentConfig,
    MatrixSource,
    McNemarResult,
    compare_methods,
    mcnemar,
    ranking_agreement,
    removal_curve,
    run_repeat,
    sweep_p,
)
from .fuzzy import (
    IdealVectorSet,
    MeanKind,
    SimilarityMatrix,
    ideal_vector_set,
    lukasiewicz_similarity,
    similarity_matrix,
)

__version__ = "0.1.0"
