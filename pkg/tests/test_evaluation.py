import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzysel.baselines import BaselineMethod
from fuzzysel.data import Dataset
from fuzzysel.entropy import EntropyKind, RemovalOrder
from fuzzysel.errors import ConfigError, LengthMismatch
from fuzzysel.evaluation import (
    ALL_COMBOS,
    AccuracyCurve,
    ExperimentConfig,
    McNemarMethod,
    compare_methods,
    derive_seed,
    mcnemar,
    mcnemar_counts,
    parse_combo,
    prepare_split,
    ranking_agreement,
    removal_curve,
    run_repeat,
    run_repeats,
    sweep_p,
)
from fuzzysel.fuzzy import MeanKind
from fuzzysel.report import RunManifest


def _blobs(m=40, d=4, seed=0, spread=0.05):
    """Two tight clusters in the corners of the unit cube plus noise features."""
    rng = np.random.default_rng(seed)
    y = np.arange(m) % 2
    x = rng.uniform(size=(m, d))
    x[:, 0] = np.where(y == 0, 0.2, 0.8) + rng.normal(0, spread, m)
    return Dataset(x, [("neg", "pos")[v] for v in y], [f"f{j}" for j in range(d)], name="blobs")


def _config(**kw):
    kw.setdefault("dataset", _blobs())
    kw.setdefault("repeats", 3)
    return ExperimentConfig(**kw)


class TestConfig:
    def test_rejects_zero_repeats(self):
        with pytest.raises(ConfigError):
            _config(repeats=0)

    def test_enum_coercion(self):
        cfg = _config(ideal_mean="harmonic", entropy_kind="kosko", removal_order="highest-first")
        assert cfg.ideal_mean is MeanKind.HARMONIC
        assert cfg.removal_order is RemovalOrder.HIGHEST_FIRST

    def test_combo_tags(self):
        assert parse_combo("g-h") == (MeanKind.GEOMETRIC, MeanKind.HARMONIC)
        assert len(ALL_COMBOS) == 9
        with pytest.raises(ConfigError):
            parse_combo("G-X")

    def test_seed_derivation_stable(self):
        assert derive_seed(0, 0) == derive_seed(0, 0)
        assert len({derive_seed(0, i) for i in range(200)}) == 200
        assert derive_seed(0, 5, 1) != derive_seed(0, 5, 0)


class TestRunRepeat:
    def test_deterministic(self):
        cfg = _config()
        a, b = run_repeat(cfg, 2), run_repeat(cfg, 2)
        assert a.seed == b.seed
        np.testing.assert_array_equal(a.accuracies, b.accuracies)
        np.testing.assert_array_equal(a.predictions, b.predictions)

    def test_separable_instance_is_perfect(self):
        rec = run_repeat(_config(dataset=_blobs(spread=0.01, d=1)), 0)
        assert rec.accuracies[0] == 1.0

    def test_last_step_has_one_feature(self):
        rec = run_repeat(_config(), 0)
        assert rec.accuracies.shape == (4,)
        assert rec.predictions.shape[0] == 4
        assert sorted(rec.removal.tolist()) == [0, 1, 2, 3]

    def test_normalization_fit_on_train_only(self):
        cfg = _config()
        prep = prepare_split(cfg, 0)
        assert prep.train.values.min() == pytest.approx(1e-6)
        assert prep.train.values.max() == 1.0
        assert np.intersect1d(prep.train_indices, prep.test_indices).size == 0

    def test_degenerate_split_redrawn(self, caplog):
        # 2 of 9 samples in the minority class: many halves miss it entirely
        x = np.linspace(0, 1, 9)[:, None] + np.zeros((9, 2))
        x[:, 1] = np.arange(9) % 3
        ds = Dataset(x, ["a"] * 7 + ["b"] * 2, ["f0", "f1"])
        cfg = _config(dataset=ds, repeats=30)
        with caplog.at_level("WARNING"):
            records = run_repeats(cfg)
        assert len(records) == 30
        assert any("redrawing" in r.message for r in caplog.records)

    def test_workers_do_not_change_results(self):
        one = run_repeats(_config(repeats=4))
        two = run_repeats(_config(repeats=4, workers=2))
        for a, b in zip(one, two):
            np.testing.assert_array_equal(a.accuracies, b.accuracies)
            assert a.seed == b.seed


class TestCurves:
    def test_removal_curve(self):
        curve = removal_curve(_config())
        assert curve.x_axis.tolist() == [0, 1, 2, 3]
        assert np.all((curve.mean_accuracy >= 0) & (curve.mean_accuracy <= 1))
        assert np.all(curve.std_accuracy >= 0)

    def test_one_feature_dataset(self):
        curve = removal_curve(_config(dataset=_blobs(d=1)))
        assert len(curve.x_axis) == 1

    def test_misaligned_curve(self):
        with pytest.raises(LengthMismatch):
            AccuracyCurve(np.arange(3), np.zeros(2), np.zeros(2), "x")

    def test_sweep_shape_and_determinism(self):
        cfg = _config(repeats=1)
        grid = [0.5, 2.0, 6.0]
        a = sweep_p(cfg, grid)
        b = sweep_p(cfg, grid)
        assert [c.config_tag for c in a][:3] == ["A-A", "A-G", "A-H"]
        assert len(a) == 9
        for ca, cb in zip(a, b):
            assert len(ca.x_axis) == 3
            np.testing.assert_array_equal(ca.mean_accuracy, cb.mean_accuracy)

    def test_sweep_matches_run_repeat_at_full_set(self):
        cfg = _config(repeats=3, ideal_mean="arithmetic", classifier_mean="harmonic", p=1.5)
        (curve,) = sweep_p(cfg, [1.5], [(MeanKind.ARITHMETIC, MeanKind.HARMONIC)])
        expected = np.mean([r.accuracies[0] for r in run_repeats(cfg)])
        assert curve.mean_accuracy[0] == pytest.approx(expected)

    def test_sweep_rejects_empty_grid(self):
        with pytest.raises(ConfigError):
            sweep_p(_config(), [])


class TestAgreement:
    def test_self_agreement(self):
        result = ranking_agreement(_config(), ("luca", "luca"))
        assert result.spearman[0, 1] == pytest.approx(1.0)

    def test_normalized_scores(self):
        result = ranking_agreement(_config())
        for k in result.kinds:
            s = result.mean_scores[k]
            assert s.min() == 0.0 and s.max() == 1.0
        ref = result.mean_scores[EntropyKind.LUCA][result.reference_order]
        assert np.all(np.diff(ref) <= 0)
        assert result.raw_scores.shape == (3, 3, 4)


def _binom_two_sided(b, c):
    n, k = b + c, min(b, c)
    return min(1.0, 2 * sum(math.comb(n, i) for i in range(k + 1)) / 2**n)


class TestMcNemar:
    def test_no_discordance(self):
        assert mcnemar_counts(0, 0).p_value == 1.0

    def test_exact_hand(self):
        r = mcnemar_counts(10, 0)
        assert r.method is McNemarMethod.EXACT_BINOMIAL
        assert r.p_value == pytest.approx(2 * 0.5**10)
        assert r.p_value == pytest.approx(0.001953, abs=5e-7)

    def test_corrected_chi_square_hand(self):
        r = mcnemar_counts(15, 5, McNemarMethod.CHI_SQUARE_CC)
        assert r.statistic == pytest.approx(4.05)
        # chi-square(1) tail written through erfc
        assert r.p_value == pytest.approx(math.erfc(math.sqrt(4.05 / 2)))
        assert r.p_value == pytest.approx(0.0442, abs=5e-5)

    def test_small_counts_use_exact(self):
        r = mcnemar_counts(15, 5)
        assert r.method is McNemarMethod.EXACT_BINOMIAL
        assert r.p_value == pytest.approx(_binom_two_sided(15, 5))

    def test_switch_at_25(self):
        assert mcnemar_counts(12, 12).method is McNemarMethod.EXACT_BINOMIAL
        assert mcnemar_counts(13, 12).method is McNemarMethod.CHI_SQUARE_CC

    def test_from_sequences(self):
        a = [1, 1, 1, 0, 0, 1]
        b = [1, 0, 0, 1, 0, 1]
        r = mcnemar(a, b)
        assert (r.b, r.c) == (2, 1)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            mcnemar([1, 0], [1])

    @settings(max_examples=200)
    @given(st.integers(0, 80), st.integers(0, 80))
    def test_symmetric_and_bounded(self, b, c):
        r = mcnemar_counts(b, c)
        assert 0.0 <= r.p_value <= 1.0
        assert r.p_value == pytest.approx(mcnemar_counts(c, b).p_value, abs=1e-15)
        if b + c < 25:
            assert r.p_value == pytest.approx(_binom_two_sided(b, c), rel=1e-9)

    @settings(max_examples=100)
    @given(st.integers(1, 120))
    def test_monotone_in_imbalance(self, n):
        ps = [mcnemar_counts(n - c, c).p_value for c in range(n // 2 + 1)]
        # c from 0 to n/2 shrinks |b - c|, so p must not decrease
        assert all(x <= y + 1e-15 for x, y in zip(ps, ps[1:]))


@pytest.fixture(scope="module")
def report():
    return compare_methods(_config(dataset=_blobs(m=30, d=5), repeats=3))


class TestCompare:
    def test_rows(self, report):
        assert [r.method for r in report.rows] == ["proposed"] + [m.value for m in BaselineMethod]
        assert report.rows[0].mcnemar is None

    def test_budget(self, report):
        for row in report.rows:
            assert row.n_selected <= report.reference_count
            assert row.n_selected + row.n_removed == report.n_features

    def test_reference_is_argmax(self, report):
        curve = report.curves["proposed"]
        assert report.reference_count == int(curve.x_axis[np.argmax(curve.mean_accuracy)])
        assert report.rows[0].accuracy == pytest.approx(curve.mean_accuracy.max())

    def test_baseline_best_under_budget(self, report):
        s = report.reference_count
        for row in report.rows[1:]:
            assert row.accuracy == pytest.approx(report.curves[row.method].mean_accuracy[:s].max())


def test_manifest_round_trip():
    cfg = _config()
    m = RunManifest.create(cfg.to_dict(), cfg.dataset.fingerprint(), ["fuzzysel", "rank"])
    again = RunManifest.from_json(m.to_json())
    assert again == m
    assert again.timestamp.endswith("Z")


def _indicator(jitter, seed, m=120, noise=3):
    rng = np.random.default_rng(seed)
    y = np.arange(m) % 2
    cols = [y + rng.normal(0, jitter, m) if jitter else y.astype(float)]
    cols += [rng.uniform(size=m) for _ in range(noise)]
    return Dataset(np.column_stack(cols), [str(v) for v in y], [f"f{j}" for j in range(noise + 1)])


@pytest.mark.parametrize("seed", range(3))
def test_exact_indicator_is_crisp_and_removed_first(seed):
    rec = run_repeat(ExperimentConfig(_indicator(0.0, seed), repeats=1, master_seed=seed), 0)
    assert rec.ranking.scores[0] < 1e-3 * rec.ranking.scores[1:].min()
    assert rec.removal[0] == 0


@pytest.mark.parametrize("seed", range(3))
def test_jittered_indicator_survives_lowest_first(seed):
    rec = run_repeat(ExperimentConfig(_indicator(0.1, seed), repeats=1, master_seed=seed), 0)
    assert rec.removal[-1] == 0
    assert rec.accuracies[-1] > 0.95
