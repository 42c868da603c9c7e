"""Accuracy as features are removed, lowest-entropy first versus highest first.

Run: python demos/03_removal_orders.py [dataset] [repeats]
"""

import sys

from fuzzysel import datasets
from fuzzysel.entropy import RemovalOrder
from fuzzysel.evaluation import ExperimentConfig, removal_curve

name = sys.argv[1] if len(sys.argv) > 1 else "wbc"
repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 100
data = datasets.load(name)

curves = {order: removal_curve(ExperimentConfig(data, repeats=repeats, removal_order=order))
          for order in RemovalOrder}
print(f"{data.name}, {repeats} repeats")
print("removed  " + "  ".join(f"{o.value:>13}" for o in curves))
for t in range(data.n_features):
    print(f"{t:>7}  " + "  ".join(f"{100 * c.mean_accuracy[t]:>12.2f}%" for c in curves.values()))
