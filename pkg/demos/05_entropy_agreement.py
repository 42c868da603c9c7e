"""How closely the Luca, Parkash and Kosko entropies agree on feature order.

Run: python demos/05_entropy_agreement.py [dataset] [repeats]
"""

import sys

from fuzzysel import datasets
from fuzzysel.evaluation import ExperimentConfig, ranking_agreement

name = sys.argv[1] if len(sys.argv) > 1 else "wdbc"
repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 50
data = datasets.load(name)
result = ranking_agreement(ExperimentConfig(data, repeats=repeats))

print("feature".ljust(26) + "".join(k.value.rjust(10) for k in result.kinds))
for j in result.reference_order:
    print(data.feature_names[j].ljust(26)
          + "".join(f"{result.mean_scores[k][j]:10.3f}" for k in result.kinds))
print("\nSpearman correlations")
for k, row in zip(result.kinds, result.spearman):
    print(k.value.ljust(10) + "".join(f"{r:8.3f}" for r in row))
