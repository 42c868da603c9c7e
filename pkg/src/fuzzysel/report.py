"""CSV exports and run manifests for experiment outputs.

Aggregated tables use six significant digits; raw per-repeat files keep
full precision (``repr`` of the float).
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .evaluation import AccuracyCurve, AgreementResult, ComparisonReport, RepeatRecord


def _g(x) -> str:
    return f"{float(x):.6g}"


def _full(x) -> str:
    return repr(float(x))


def _writer(path):
    fh = open(path, "w", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_curves(path, curves: list[AccuracyCurve], x_name: str, extra=None):
    """One row per curve point: tag, x, mean accuracy, std.

    ``extra`` maps a column name to a function of the x value, e.g. the
    selected-feature count next to the removed count.
    """
    extra = extra or {}
    fh, w = _writer(path)
    with fh:
        w.writerow(["tag", x_name, *extra, "mean_accuracy", "std_accuracy"])
        for c in curves:
            for x, m, s in zip(c.x_axis, c.mean_accuracy, c.std_accuracy):
                x = x.item() if hasattr(x, "item") else x
                w.writerow([c.config_tag, _g(x) if isinstance(x, float) else x,
                            *(f(x) for f in extra.values()), _g(m), _g(s)])


def write_removal_runs(path, runs: list[tuple[str, list[RepeatRecord]]]):
    """Raw per-repeat accuracies for one or more tagged removal runs."""
    fh, w = _writer(path)
    with fh:
        w.writerow(["tag", "repeat", "seed", "n_removed", "removed_feature", "accuracy"])
        for tag, records in runs:
            for r in records:
                for t, acc in enumerate(r.accuracies):
                    w.writerow([tag, r.repeat_index, r.seed, t, int(r.removal[t]), _full(acc)])


def write_sweep_runs(path, runs, curves: list[AccuracyCurve]):
    fh, w = _writer(path)
    with fh:
        w.writerow(["repeat", "tag", "p", "accuracy"])
        for i, per_repeat in enumerate(runs):
            for c, row in zip(curves, per_repeat):
                for p, acc in zip(c.x_axis, row):
                    w.writerow([i, c.config_tag, _g(p), _full(acc)])


def write_agreement(path, result: AgreementResult, feature_names):
    fh, w = _writer(path)
    with fh:
        w.writerow(["position", "feature_index", "feature_name",
                    *(k.value for k in result.kinds)])
        for pos, j in enumerate(result.reference_order):
            w.writerow([pos, int(j), feature_names[j],
                        *(_g(result.mean_scores[k][j]) for k in result.kinds)])


def write_spearman(path, result: AgreementResult):
    fh, w = _writer(path)
    with fh:
        w.writerow(["kind", *(k.value for k in result.kinds)])
        for k, row in zip(result.kinds, result.spearman):
            w.writerow([k.value, *(_g(v) for v in row)])


def write_agreement_runs(path, result: AgreementResult):
    fh, w = _writer(path)
    with fh:
        w.writerow(["repeat", "kind", "feature_index", "entropy"])
        for i, per_repeat in enumerate(result.raw_scores):
            for k, row in zip(result.kinds, per_repeat):
                for j, v in enumerate(row):
                    w.writerow([i, k.value, j, _full(v)])


def write_comparison(path, report: ComparisonReport):
    """Accuracy table with both feature-count conventions and McNemar results."""
    fh, w = _writer(path)
    with fh:
        w.writerow(["method", "accuracy_pct", "n_selected", "n_removed",
                    "mcnemar_b", "mcnemar_c", "mcnemar_statistic", "mcnemar_p", "mcnemar_method"])
        for row in report.rows:
            t = row.mcnemar
            w.writerow([row.method, f"{100 * row.accuracy:.2f}", row.n_selected, row.n_removed,
                        *(("", "", "", "", "") if t is None else
                          (t.b, t.c, _g(t.statistic), _g(t.p_value), t.method.value))])


def write_comparison_runs(path, report: ComparisonReport):
    fh, w = _writer(path)
    with fh:
        w.writerow(["repeat", "method", "n_selected", "accuracy"])
        names = list(report.curves)
        for i, per_repeat in enumerate(report.accuracies):
            for name, row in zip(names, per_repeat):
                for k, acc in enumerate(row, start=1):
                    w.writerow([i, name, k, _full(acc)])


@dataclass(frozen=True)
class RunManifest:
    command_line: str
    config: dict
    dataset_fingerprint: str
    tool_version: str
    timestamp: str

    @classmethod
    def create(cls, config: dict, fingerprint: str, argv=None) -> "RunManifest":
        argv = sys.argv if argv is None else argv
        return cls(" ".join(map(str, argv)), config, fingerprint, __version__,
                   datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"))

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))

    def write(self, path):
        Path(path).write_text(self.to_json() + "\n")
