import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fuzzysel.entropy import (
    Direction,
    EntropyKind,
    FeatureRanking,
    RemovalOrder,
    entropy_columns,
    fuzzy_entropy,
    rank_features,
    removal_list,
    removal_sequence,
    survivors,
)
from fuzzysel.errors import DomainError, EmptyColumn
from fuzzysel.fuzzy import SimilarityMatrix

KINDS = list(EntropyKind)
column = arrays(float, st.integers(1, 40), elements=st.floats(0.0, 1.0))
BOUNDS = {EntropyKind.LUCA: math.log(2), EntropyKind.PARKASH: math.sqrt(2) - 1}


def _matrix(entries):
    entries = np.asarray(entries, dtype=float)
    return SimilarityMatrix(entries, np.zeros((entries.shape[0], 2), dtype=int), 2.0)


class TestHandValues:
    @pytest.mark.parametrize("r", [1, 4, 17])
    def test_half_column(self, r):
        col = np.full(r, 0.5)
        assert fuzzy_entropy(col, "luca") == pytest.approx(r * math.log(2))
        assert fuzzy_entropy(col, "parkash") == pytest.approx(r * (math.sqrt(2) - 1))
        assert fuzzy_entropy(col, "kosko") == pytest.approx(1.0)

    @pytest.mark.parametrize("kind", KINDS)
    def test_crisp_is_zero(self, kind):
        assert fuzzy_entropy([0.0, 1.0, 1.0, 0.0], kind) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("kind", KINDS)
    def test_all_zero_column(self, kind):
        assert fuzzy_entropy([0.0, 0.0], kind) == 0.0

    def test_luca_frozen(self):
        # -(0.2 ln 0.2 + 0.8 ln 0.8)
        assert fuzzy_entropy([0.2], "luca") == pytest.approx(0.500402423538188, abs=1e-12)

    def test_kosko_frozen(self):
        assert fuzzy_entropy([0.2, 0.6], "kosko") == pytest.approx(0.6 / 1.4)

    @pytest.mark.parametrize("kind", KINDS)
    def test_empty(self, kind):
        with pytest.raises(EmptyColumn):
            fuzzy_entropy([], kind)

    @pytest.mark.parametrize("bad", [[1.1], [-0.2], [np.nan]])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            fuzzy_entropy(bad, "luca")


class TestEntropyProperties:
    @settings(max_examples=200)
    @given(column, st.sampled_from(KINDS))
    def test_bounds(self, col, kind):
        e = fuzzy_entropy(col, kind)
        upper = BOUNDS[kind] * col.size if kind in BOUNDS else 1.0
        assert -1e-12 <= e <= upper + 1e-9

    @settings(max_examples=200)
    @given(column, st.sampled_from(KINDS))
    def test_complement(self, col, kind):
        assert fuzzy_entropy(1.0 - col, kind) == pytest.approx(fuzzy_entropy(col, kind), abs=1e-12)

    @settings(max_examples=100)
    @given(column, st.sampled_from(KINDS), st.randoms(use_true_random=False))
    def test_row_permutation(self, col, kind, rnd):
        perm = list(range(col.size))
        rnd.shuffle(perm)
        assert fuzzy_entropy(col[perm], kind) == pytest.approx(fuzzy_entropy(col, kind), abs=1e-12)

    @settings(max_examples=100)
    @given(column, st.sampled_from(KINDS))
    def test_maximum_at_half(self, col, kind):
        assert fuzzy_entropy(col, kind) <= fuzzy_entropy(np.full(col.size, 0.5), kind) + 1e-12

    @settings(max_examples=60)
    @given(arrays(float, (5, 3), elements=st.floats(0.0, 1.0)))
    def test_uniform_scaling_on_copy(self, P):
        # duplicating every row doubles Luca/Parkash; one duplicated row adds a per-column amount
        for kind in (EntropyKind.LUCA, EntropyKind.PARKASH):
            np.testing.assert_allclose(entropy_columns(np.vstack([P, P]), kind),
                                       2 * entropy_columns(P, kind), atol=1e-12)


class TestRanking:
    def test_hand_matrix(self):
        P = np.column_stack([np.full(4, 0.5), np.ones(4)])
        r = rank_features(_matrix(P), "luca")
        np.testing.assert_allclose(r.scores, [4 * math.log(2), 0.0])
        assert r.order.tolist() == [1, 0]
        assert r.direction is Direction.LOWER_IS_BETTER

    def test_singleton(self):
        assert rank_features(_matrix([[0.3], [0.6]]), "kosko").order.tolist() == [0]

    def test_ties_keep_lower_index(self):
        r = FeatureRanking.from_scores([1.0, 0.5, 1.0, 0.5], Direction.LOWER_IS_BETTER)
        assert r.order.tolist() == [1, 3, 0, 2]
        r = FeatureRanking.from_scores([1.0, 0.5, 1.0, 0.5], Direction.HIGHER_IS_BETTER)
        assert r.order.tolist() == [0, 2, 1, 3]

    @settings(max_examples=60)
    @given(arrays(float, (6, 4), elements=st.floats(0.0, 1.0)), st.randoms(use_true_random=False))
    def test_row_permutation_keeps_order(self, P, rnd):
        perm = list(range(6))
        rnd.shuffle(perm)
        a = rank_features(_matrix(P), "luca").scores
        b = rank_features(_matrix(P[perm]), "luca").scores
        np.testing.assert_allclose(a, b, atol=1e-12)

    def test_ranks(self):
        r = FeatureRanking.from_scores([0.9, 0.1, 0.5], Direction.LOWER_IS_BETTER)
        assert r.ranks().tolist() == [3, 1, 2]

    def test_csv(self, tmp_path):
        r = FeatureRanking.from_scores([0.9, 0.1, 0.5], Direction.LOWER_IS_BETTER, "luca")
        r.to_csv(tmp_path / "r.csv", ["a", "b", "c"])
        lines = (tmp_path / "r.csv").read_text().splitlines()
        assert lines == ["method,feature_index,feature_name,score,rank",
                         "luca,1,b,0.1,1", "luca,2,c,0.5,2", "luca,0,a,0.9,3"]


class TestRemoval:
    scores = FeatureRanking.from_scores([0.9, 0.1, 0.5], Direction.LOWER_IS_BETTER)

    def test_highest_first(self):
        assert removal_sequence(self.scores, "highest-first") == [{0, 1, 2}, {1, 2}, {1}]

    def test_lowest_first(self):
        assert removal_sequence(self.scores, "lowest-first") == [{0, 1, 2}, {0, 2}, {0}]

    def test_single(self):
        r = FeatureRanking.from_scores([0.3], Direction.LOWER_IS_BETTER)
        assert removal_sequence(r, RemovalOrder.LOWEST_FIRST) == [{0}]

    def test_survivors(self):
        assert survivors(self.scores, "lowest-first", 1).tolist() == [0, 2]

    @staticmethod
    def _greedy(scores, order):
        # Brute-force: at every step recompute the extreme among the remaining features.
        remaining = list(range(len(scores)))
        seq = []
        for _ in range(len(scores)):
            seq.append(frozenset(remaining))
            if order is RemovalOrder.LOWEST_FIRST:
                pick = min(remaining, key=lambda j: (scores[j], j))
            else:
                pick = min(remaining, key=lambda j: (-scores[j], j))
            remaining.remove(pick)
        return seq

    @settings(max_examples=200)
    @given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0, 3.5]), min_size=1, max_size=12)
           | st.lists(st.floats(0, 10), min_size=1, max_size=12),
           st.sampled_from(list(RemovalOrder)))
    def test_sequence_matches_greedy(self, scores, order):
        ranking = FeatureRanking.from_scores(scores, Direction.LOWER_IS_BETTER)
        assert removal_sequence(ranking, order) == self._greedy(scores, order)
        assert sorted(removal_list(ranking, order).tolist()) == list(range(len(scores)))
