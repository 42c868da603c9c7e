"""Compare the entropy ranker with six classical filters, with McNemar tests.

Run: python demos/06_compare_baselines.py [dataset] [repeats]
"""

import sys

from fuzzysel import datasets
from fuzzysel.evaluation import ExperimentConfig, compare_methods

name = sys.argv[1] if len(sys.argv) > 1 else "wbc"
repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 100
report = compare_methods(ExperimentConfig(datasets.load(name), repeats=repeats))

print(f"{report.dataset}: reference count S = {report.reference_count} of {report.n_features} features")
print(f"{'method':<25}{'acc %':>8}{'kept':>6}  McNemar")
for row in report.rows:
    t = row.mcnemar
    test = "" if t is None else f"b={t.b} c={t.c} p={t.p_value:.3g} ({t.method.value})"
    print(f"{row.method:<25}{100 * row.accuracy:8.2f}{row.n_selected:6d}  {test}")
