"""Full-feature accuracy over the exponent p for all nine mean combinations.

Run: python demos/04_p_sweep.py [dataset] [repeats]
"""

import sys

from fuzzysel import datasets
from fuzzysel.evaluation import DEFAULT_P_GRID, ExperimentConfig, sweep_p

name = sys.argv[1] if len(sys.argv) > 1 else "wbc"
repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 50
cfg = ExperimentConfig(datasets.load(name), repeats=repeats)

curves = sweep_p(cfg, DEFAULT_P_GRID)
print("tag  " + " ".join(f"{p:>6g}" for p in DEFAULT_P_GRID))
for c in curves:
    best = c.x_axis[c.argmax()]
    print(f"{c.config_tag}  " + " ".join(f"{100 * m:6.2f}" for m in c.mean_accuracy) + f"   best p={best:g}")
