"""Command-line entry point: ``fuzzysel {rank,sweep,ablate,agree,compare}``.

Exit codes: 0 success, 1 data errors, 2 configuration errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import datasets, report
from .baselines import BaselineMethod, BinStrategy, DiscretizationSpec
from .classify import ClassifierConfig, classify, predictions_to_csv
from .data import load_csv
from .entropy import EntropyKind, RemovalOrder, rank_features, removal_list
from .errors import ConfigError, FuzzySelError
from .evaluation import (
    ALL_COMBOS,
    DEFAULT_P_GRID,
    ExperimentConfig,
    MatrixSource,
    compare_methods,
    parse_combo,
    prepare_split,
    ranking_agreement,
    removal_curve,
    run_repeats,
    sweep_p,
    sweep_runs,
)
from .fuzzy import MeanKind, ideal_vector_set, similarity_matrix


def _choices(enum_cls):
    return [m.value for m in enum_cls]


def _column(text):
    return int(text) if text.lstrip("-").isdigit() else text


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--data", type=Path, help="CSV file to load")
    src.add_argument("--dataset", choices=sorted(datasets.LOADERS),
                     help="bundled benchmark dataset")
    common.add_argument("--label-col", type=_column, help="label column name or 0-based index")
    common.add_argument("--drop-cols", default="", help="comma-separated columns to ignore")
    common.add_argument("--ideal-mean", choices=_choices(MeanKind), default="geometric")
    common.add_argument("--classifier-mean", choices=_choices(MeanKind), default="geometric")
    common.add_argument("--entropy", choices=_choices(EntropyKind), default="luca")
    common.add_argument("--p", type=float, default=2.0)
    common.add_argument("--repeats", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--order", choices=_choices(RemovalOrder), default="lowest-first")
    common.add_argument("--matrix-source", choices=_choices(MatrixSource), default="train")
    common.add_argument("--clip-percentile", type=float, default=0.0)
    common.add_argument("--threads", type=int, default=1, help="worker processes for repeats")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="fuzzysel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", parents=[common], help="rank features on one seeded split")
    rank.add_argument("--select", type=int, help="features kept for the prediction export")

    sweep = sub.add_parser("sweep", parents=[common], help="accuracy against p, nine mean combinations")
    sweep.add_argument("--combos", default=",".join(f"{i.letter}-{c.letter}" for i, c in ALL_COMBOS))
    sweep.add_argument("--p-grid", default=",".join(f"{p:g}" for p in DEFAULT_P_GRID))

    ablate = sub.add_parser("ablate", parents=[common], help="accuracy against features removed")
    ablate.add_argument("--both", action="store_true", help="run both removal orders")

    sub.add_parser("agree", parents=[common], help="ranking agreement of the entropy functions")

    compare = sub.add_parser("compare", parents=[common], help="compare against baseline filters")
    compare.add_argument("--bins", type=int, default=10)
    compare.add_argument("--bin-strategy", choices=_choices(BinStrategy), default="equal-width")
    return parser


def _load(args):
    if args.dataset:
        return datasets.load(args.dataset)
    if args.label_col is None:
        raise ConfigError("--label-col is required with --data")
    drops = [_column(c.strip()) for c in args.drop_cols.split(",") if c.strip()]
    return load_csv(args.data, args.label_col, drops)


def _config(args, data, **overrides) -> ExperimentConfig:
    if args.p <= 0:
        raise ConfigError(f"--p must be positive, got {args.p}")
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if not 0 <= args.clip_percentile < 50:
        raise ConfigError("--clip-percentile must be in [0, 50)")
    kw = dict(dataset=data, repeats=args.repeats, master_seed=args.seed,
              ideal_mean=args.ideal_mean, classifier_mean=args.classifier_mean,
              entropy_kind=args.entropy, p=args.p, removal_order=args.order,
              matrix_source=args.matrix_source, clip_percentile=args.clip_percentile,
              workers=args.threads)
    kw.update(overrides)
    return ExperimentConfig(**kw)


def _manifest(out: Path, name: str, cfg: ExperimentConfig, argv, **extra):
    config = cfg.to_dict() | extra
    report.RunManifest.create(config, cfg.dataset.fingerprint(), argv).write(out / f"{name}.manifest.json")


def cmd_rank(args, argv):
    data = _load(args)
    cfg = _config(args, data, repeats=1)
    prep = prepare_split(cfg, 0)
    ideals = ideal_vector_set(prep.train, cfg.ideal_mean)
    source = prep.train if cfg.matrix_source is MatrixSource.TRAIN else prep.test
    ranking = rank_features(similarity_matrix(source, ideals, cfg.p), cfg.entropy_kind)
    ranking.to_csv(args.out / "ranking.csv", data.feature_names)

    d = data.n_features
    keep = d if args.select is None else args.select
    if not 1 <= keep <= d:
        raise ConfigError(f"--select must be in 1..{d}")
    subset = removal_list(ranking, cfg.removal_order)[d - keep:]
    preds = classify(prep.test, ideals, ClassifierConfig(cfg.classifier_mean, cfg.p, tuple(subset)))
    predictions_to_csv(args.out / "predictions.csv", preds, prep.test.labels, data.class_order)
    _manifest(args.out, "rank", cfg, argv, split_seed=prep.seed, selected=keep)


def cmd_sweep(args, argv):
    data = _load(args)
    cfg = _config(args, data)
    combos = [parse_combo(t.strip()) for t in args.combos.split(",") if t.strip()]
    try:
        grid = [float(p) for p in args.p_grid.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"--p-grid must be comma-separated numbers: {args.p_grid!r}") from None
    runs = sweep_runs(cfg, grid, combos)
    curves = sweep_p(cfg, grid, combos, runs=runs)
    report.write_curves(args.out / "sweep.csv", curves, "p")
    report.write_sweep_runs(args.out / "sweep_runs.csv", runs, curves)
    _manifest(args.out, "sweep", cfg, argv, p_grid=grid, combos=[c.config_tag for c in curves])


def cmd_ablate(args, argv):
    data = _load(args)
    orders = list(RemovalOrder) if args.both else [RemovalOrder(args.order)]
    curves, runs = [], []
    for order in orders:
        cfg = _config(args, data, removal_order=order)
        records = run_repeats(cfg)
        runs.append((order.value, records))
        curves.append(removal_curve(cfg, records))
    d = data.n_features
    report.write_curves(args.out / "ablation.csv", curves, "n_removed",
                        extra={"n_selected": lambda t: d - int(t)})
    report.write_removal_runs(args.out / "ablation_runs.csv", runs)
    _manifest(args.out, "ablate", cfg, argv, orders=[o.value for o in orders])


def cmd_agree(args, argv):
    data = _load(args)
    cfg = _config(args, data)
    result = ranking_agreement(cfg)
    report.write_agreement(args.out / "agreement.csv", result, data.feature_names)
    report.write_spearman(args.out / "spearman.csv", result)
    report.write_agreement_runs(args.out / "agreement_runs.csv", result)
    _manifest(args.out, "agree", cfg, argv)


def cmd_compare(args, argv):
    data = _load(args)
    cfg = _config(args, data)
    disc = DiscretizationSpec(args.bins, args.bin_strategy)
    result = compare_methods(cfg, tuple(BaselineMethod), disc)
    report.write_comparison(args.out / "comparison.csv", result)
    d = data.n_features
    report.write_curves(args.out / "comparison_curves.csv", list(result.curves.values()),
                        "n_selected", extra={"n_removed": lambda k: d - int(k)})
    report.write_comparison_runs(args.out / "comparison_runs.csv", result)
    _manifest(args.out, "compare", cfg, argv, bins=disc.bins, bin_strategy=disc.strategy.value,
              reference_count=result.reference_count)


COMMANDS = {"rank": cmd_rank, "sweep": cmd_sweep, "ablate": cmd_ablate,
            "agree": cmd_agree, "compare": cmd_compare}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.repeats < 1:
            raise ConfigError("--repeats must be >= 1")
        if not 0 <= args.seed < 2**64:
            raise ConfigError("--seed must be an unsigned 64-bit integer")
        args.out.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command](args, ["fuzzysel", *argv])
    except ConfigError as exc:
        print(f"fuzzysel: configuration error: {exc}", file=sys.stderr)
        return 2
    except (FuzzySelError, FileNotFoundError) as exc:
        print(f"fuzzysel: data error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
