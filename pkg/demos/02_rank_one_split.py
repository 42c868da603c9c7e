"""Rank the WBC features on one seeded split and classify with a subset.

Run: python demos/02_rank_one_split.py
"""

from fuzzysel import datasets
from fuzzysel.classify import ClassifierConfig, accuracy, classify
from fuzzysel.entropy import rank_features, removal_list
from fuzzysel.evaluation import ExperimentConfig, prepare_split
from fuzzysel.fuzzy import ideal_vector_set, similarity_matrix

data = datasets.load_wbc()
cfg = ExperimentConfig(data, repeats=1, master_seed=7)
prep = prepare_split(cfg, 0)
print(f"{data.name}: {prep.train.n_samples} train / {prep.test.n_samples} test samples")

ideals = ideal_vector_set(prep.train, cfg.ideal_mean)
ranking = rank_features(similarity_matrix(prep.train, ideals, cfg.p), cfg.entropy_kind)
for j in ranking.order:
    print(f"  {data.feature_names[j]:<28} {ranking.scores[j]:.4f}")

removed = removal_list(ranking, cfg.removal_order)
for keep in (9, 6, 3, 1):
    subset = tuple(removed[data.n_features - keep:])
    preds = classify(prep.test, ideals, ClassifierConfig(cfg.classifier_mean, cfg.p, subset))
    names = ", ".join(data.feature_names[j] for j in sorted(subset)) if keep <= 3 else f"{keep} features"
    print(f"keep {keep}: accuracy {accuracy(preds, prep.test.labels):.4f} ({names})")
