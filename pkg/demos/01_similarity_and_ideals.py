"""Walk through the building blocks on a toy two-class problem.

Run: python demos/01_similarity_and_ideals.py
"""

import numpy as np

from fuzzysel import Dataset, MeanKind, ideal_vector_set, lukasiewicz_similarity, similarity_matrix
from fuzzysel.classify import ClassifierConfig, classify
from fuzzysel.entropy import rank_features

# Already-normalized values; feature 0 separates the classes, feature 1 does not.
train = Dataset(
    [[0.10, 0.50], [0.20, 0.90], [0.15, 0.30], [0.80, 0.40], [0.90, 0.80], [0.85, 0.20]],
    ["low", "low", "low", "high", "high", "high"],
    ["signal", "noise"],
)

for kind in MeanKind:
    ideals = ideal_vector_set(train, kind)
    print(f"{kind.value:>10} ideal vectors:", np.round(ideals.vectors, 3).tolist())

print("similarity(0.3, 0.7) at p=1:", lukasiewicz_similarity(0.3, 0.7, 1))
print("similarity(0.3, 0.7) at p=2:", round(lukasiewicz_similarity(0.3, 0.7, 2), 6))

ideals = ideal_vector_set(train, MeanKind.GEOMETRIC)
P = similarity_matrix(train, ideals, p=2)
print("similarity matrix, one row per (sample, class):")
print(np.round(P.entries, 3))

ranking = rank_features(P, "luca")
print("Luca entropy per feature:", np.round(ranking.scores, 4).tolist())

test = Dataset([[0.12, 0.6], [0.88, 0.6]], ["low", "high"], ["signal", "noise"])
for pred in classify(test, ideals, ClassifierConfig(MeanKind.GEOMETRIC, 2.0)):
    print(f"sample {pred.sample_index} -> {pred.predicted_class}",
          np.round(pred.class_scores, 3).tolist())
