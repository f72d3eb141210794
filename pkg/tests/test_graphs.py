"""Schedule generators and score generators."""

import math

import numpy as np
import pytest

from btlrank.graphs import (
    TopologySpec,
    _gaussian_raw,
    banded_edge_count,
    even_spread_scores,
    gaussian_normalized_scores,
    generate_schedule,
)
from btlrank.model import _union_find_connected
from btlrank.spectral import algebraic_connectivity


class TestTopologySpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            TopologySpec("ring", 5, 1)

    def test_banded_needs_width_in_range(self):
        with pytest.raises(ValueError, match="width"):
            TopologySpec("banded", 5, 1)
        with pytest.raises(ValueError, match="width"):
            TopologySpec("banded", 5, 1, W=5)

    def test_erdos_renyi_needs_probability_and_seed(self):
        with pytest.raises(ValueError, match="probability"):
            TopologySpec("erdos_renyi", 5, 1, p=0.0, seed=1)
        with pytest.raises(ValueError, match="seed"):
            TopologySpec("erdos_renyi", 5, 1, p=0.5)

    def test_barbell_needs_even_d(self):
        with pytest.raises(ValueError, match="even"):
            TopologySpec("barbell", 7, 1)

    def test_dict_round_trip(self):
        spec = TopologySpec("banded", 30, 4, W=6)
        assert TopologySpec.from_dict(spec.to_dict()) == spec


class TestGenerateSchedule:
    def test_banded_edge_and_comparison_counts(self):
        # enumeration oracle for the band 0 < |i-j| <= W
        for d, W in [(100, 10), (60, 3), (7, 6), (9, 4)]:
            expected_edges = sum(
                1 for i in range(d) for j in range(i + 1, d) if j - i <= W
            )
            assert banded_edge_count(d, W) == expected_edges
            s = generate_schedule(TopologySpec("banded", d, 5, W=W))
            assert s.n_edges == expected_edges
            assert s.n == 5 * expected_edges

    def test_banded_full_width_is_complete(self):
        s = generate_schedule(TopologySpec("banded", 8, 1, W=7))
        assert s.n_edges == 8 * 7 // 2

    def test_complete_counts_and_connectivity(self):
        s = generate_schedule(TopologySpec("complete", 4, 1))
        assert s.n_edges == 6
        assert algebraic_connectivity(s.laplacian) == pytest.approx(2 / 3, abs=1e-12)

    def test_star_counts(self):
        s = generate_schedule(TopologySpec("star", 20, 200))
        assert s.n == 3800
        assert s.v_max == 19
        assert all(pair[0] == 0 for pair in s.pair_counts)

    def test_barbell_structure(self):
        d, T = 10, 3
        s = generate_schedule(TopologySpec("barbell", d, T))
        half = d // 2
        assert s.n_edges == 2 * (half * (half - 1) // 2) + 1
        assert s.count(half - 1, half) == T  # the single bridge
        crossing = [
            (i, j) for (i, j) in s.pair_counts if (i < half) != (j < half)
        ]
        assert crossing == [(half - 1, half)]
        assert all(c == T for c in s.pair_counts.values())

    def test_erdos_renyi_connected_and_deterministic(self):
        spec = TopologySpec("erdos_renyi", 30, 2, p=0.3, seed=123)
        s1 = generate_schedule(spec)
        s2 = generate_schedule(spec)
        assert dict(s1.pair_counts) == dict(s2.pair_counts)
        assert _union_find_connected(30, s1.pair_counts.keys())
        s3 = generate_schedule(TopologySpec("erdos_renyi", 30, 2, p=0.3, seed=124))
        assert dict(s1.pair_counts) != dict(s3.pair_counts)

    def test_erdos_renyi_retry_budget_exhaustion(self):
        from btlrank.errors import GenerationError

        with pytest.raises(GenerationError, match="connected"):
            generate_schedule(TopologySpec("erdos_renyi", 30, 1, p=1e-9, seed=0))

    def test_erdos_renyi_rejection_rate_at_threshold(self):
        # p = 4 log d / d keeps disconnected draws below 5%
        d = 100
        p = 4.0 * math.log(d) / d
        pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
        rejected = 0
        for seed in range(1000):
            rng = np.random.default_rng(seed)
            mask = rng.random(len(pairs)) < p
            chosen = [pair for pair, keep in zip(pairs, mask) if keep]
            if not chosen or not _union_find_connected(d, chosen):
                rejected += 1
        assert rejected / 1000 < 0.05


class TestEvenSpreadScores:
    def test_two_items_unit_range(self):
        np.testing.assert_allclose(
            even_spread_scores(2, 1.0).values, [-0.5, 0.5], atol=1e-15
        )

    def test_zero_range_gives_zero_vector(self):
        np.testing.assert_array_equal(even_spread_scores(5, 0.0).values, np.zeros(5))

    def test_extreme_gap(self):
        for d, B in [(10, 2.0), (100, 5.0), (3, 1.0)]:
            v = even_spread_scores(d, B).values
            assert v.max() - v.min() == pytest.approx(2 * B * (d - 1) / d, rel=1e-12)

    def test_zero_sum_and_even_spacing(self):
        v = even_spread_scores(7, 3.0).values
        assert abs(v.sum()) <= 1e-12
        np.testing.assert_allclose(np.diff(v), 2 * 3.0 / 7, atol=1e-12)


class TestGaussianNormalizedScores:
    def test_deterministic_given_seed(self):
        a = gaussian_normalized_scores(12, 1.0, seed=5)
        b = gaussian_normalized_scores(12, 1.0, seed=5)
        np.testing.assert_array_equal(a.values, b.values)
        c = gaussian_normalized_scores(12, 1.0, seed=6)
        assert not np.array_equal(a.values, c.values)

    def test_raw_draw_sup_norm_is_exactly_B(self):
        for seed in range(20):
            raw = _gaussian_raw(15, 2.5, seed)
            assert np.abs(raw).max() == 2.5

    def test_result_is_centered(self):
        v = gaussian_normalized_scores(9, 1.5, seed=3).values
        assert abs(v.sum()) <= 1e-12

    def test_sup_norm_of_scaled_draws_concentrates_at_one(self):
        # across seeds, max_i |raw_i| / B is identically 1 by construction
        sup_norms = [
            np.abs(_gaussian_raw(10, 4.0, seed)).max() / 4.0 for seed in range(200)
        ]
        assert set(sup_norms) == {1.0}

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            gaussian_normalized_scores(1, 1.0, seed=0)
        with pytest.raises(ValueError):
            gaussian_normalized_scores(5, 0.0, seed=0)
