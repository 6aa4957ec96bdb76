"""Separability index: cardinalities, invariances, and the brute oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from separability import (
    Dataset,
    DegenerateClass,
    DegenerateDataset,
    DegenerateSubset,
    DistanceCapError,
    class_distance_sets,
    distribution_identity_score,
    dsi,
    dsi_subsampled,
    fit_mahalanobis,
    ks_statistic,
    wasserstein1_normalized,
)

from conftest import random_dataset, rng
from oracles import brute_dsi


class TestClassDistanceSets:
    def test_cardinalities(self):
        ds = random_dataset(n_per_class=8, classes=3, seed=1)
        sets = class_distance_sets(ds)
        assert sorted(sets) == [0, 1, 2]
        for label, (icd, bcd) in sets.items():
            assert icd.cardinality == 8 * 7 // 2
            assert bcd.cardinality == 8 * 16
            assert icd.label == label and bcd.label == label

    def test_matches_direct_computation(self):
        # gathering from the condensed vector equals computing each set alone
        ds = random_dataset(n_per_class=10, classes=2, seed=2)
        sets = class_distance_sets(ds)
        for label in (0, 1):
            mine = ds.points[ds.labels == label]
            rest = ds.points[ds.labels != label]
            icd_direct = sorted(
                float(np.linalg.norm(mine[i] - mine[j]))
                for i in range(10)
                for j in range(i + 1, 10)
            )
            bcd_direct = sorted(
                float(np.linalg.norm(p - q)) for p in mine for q in rest
            )
            np.testing.assert_allclose(np.sort(sets[label][0].values), icd_direct)
            np.testing.assert_allclose(np.sort(sets[label][1].values), bcd_direct)

    def test_singleton_class_rejected(self):
        ds = Dataset(points=np.ones((3, 2)), labels=[0, 0, 1])
        with pytest.raises(DegenerateClass) as exc:
            class_distance_sets(ds)
        assert exc.value.label == 1

    def test_one_class_rejected(self):
        ds = Dataset(points=np.ones((4, 2)), labels=[0, 0, 0, 0])
        with pytest.raises(DegenerateDataset):
            class_distance_sets(ds)

    def test_cap_enforced(self):
        ds = random_dataset(n_per_class=30, seed=3)
        with pytest.raises(DistanceCapError, match="exceed"):
            class_distance_sets(ds, max_points=59)
        class_distance_sets(ds, max_points=60)  # exactly at the cap is fine


class TestDsi:
    @pytest.mark.parametrize("stat", ["ks", "wasserstein"])
    def test_matches_brute_oracle(self, stat):
        stat_fn = {"ks": ks_statistic, "wasserstein": wasserstein1_normalized}[stat]
        for seed in range(3):
            ds = random_dataset(n_per_class=15, classes=3, seed=seed, spread=2.0)
            report = dsi(ds, stat=stat)
            want = brute_dsi(ds.points, ds.labels, stat_fn)
            assert report.dsi == pytest.approx(want, abs=1e-12)

    def test_report_fields(self, small_two_class):
        report = dsi(small_two_class)
        assert report.n_points == 40 and report.dim == 2
        assert report.metric == "euclidean" and report.stat == "ks"
        assert sorted(report.per_class_similarity) == [0, 1]
        assert report.dsi == pytest.approx(
            np.mean(list(report.per_class_similarity.values()))
        )

    def test_complexity_is_exact_complement(self, small_two_class):
        report = dsi(small_two_class)
        assert report.dsi + report.complexity == 1.0

    def test_separated_beats_mixed(self):
        mixed = random_dataset(n_per_class=60, seed=4, spread=0.0)
        apart = random_dataset(n_per_class=60, seed=4, spread=12.0)
        assert dsi(apart).dsi > 0.8 > 0.35 > dsi(mixed).dsi

    def test_bounds(self):
        for seed in range(5):
            ds = random_dataset(n_per_class=10, seed=seed, spread=float(seed))
            r = dsi(ds)
            assert 0.0 <= r.dsi <= 1.0
            for s in r.per_class_similarity.values():
                assert 0.0 <= s <= 1.0

    def test_label_permutation_invariance(self):
        ds = random_dataset(n_per_class=25, seed=5, spread=1.5)
        perm = rng(6).permutation(ds.n)
        shuffled = ds.subset(perm)
        a, b = dsi(ds), dsi(shuffled)
        assert a.dsi == pytest.approx(b.dsi, abs=1e-12)
        for c in a.per_class_similarity:
            assert a.per_class_similarity[c] == pytest.approx(
                b.per_class_similarity[c], abs=1e-12
            )

    def test_isometry_invariance(self):
        # euclidean distances ignore rotation and translation
        ds = random_dataset(n_per_class=30, seed=7, spread=2.0)
        theta = 0.83
        rot = np.array(
            [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
        )
        moved = Dataset(ds.points[:, :2] @ rot.T + 5.0, ds.labels)
        base = dsi(Dataset(ds.points[:, :2], ds.labels))
        assert dsi(moved).dsi == pytest.approx(base.dsi, abs=1e-9)

    def test_scale_invariance_of_ks(self):
        # KS compares ranks, so uniform scaling drops out exactly
        ds = random_dataset(n_per_class=30, seed=8, spread=2.0)
        scaled = Dataset(ds.points * 37.5, ds.labels)
        assert dsi(scaled).dsi == pytest.approx(dsi(ds).dsi, abs=1e-12)

    @pytest.mark.parametrize("workers", [2, 8])
    def test_workers_identical(self, workers):
        ds = random_dataset(n_per_class=100, classes=3, seed=9, spread=1.0)
        assert dsi(ds, workers=workers).dsi == dsi(ds, workers=1).dsi

    def test_mahalanobis_metric(self, small_two_class):
        metric = fit_mahalanobis(small_two_class)
        report = dsi(small_two_class, metric=metric)
        assert report.metric == "mahalanobis"
        assert 0.0 <= report.dsi <= 1.0

    def test_unknown_stat(self, small_two_class):
        with pytest.raises(ValueError, match="unknown statistic"):
            dsi(small_two_class, stat="cramer")

    def test_callable_stat(self, small_two_class):
        report = dsi(small_two_class, stat=ks_statistic)
        assert report.dsi == pytest.approx(dsi(small_two_class, stat="ks").dsi)

    def test_to_dict_shape(self, small_two_class):
        d = dsi(small_two_class).to_dict()
        assert list(d) == [
            "n_points",
            "dim",
            "metric",
            "stat",
            "per_class_similarity",
            "dsi",
            "complexity",
        ]
        assert "wall_time_s" not in d
        timed = dsi(small_two_class).to_dict(include_timing=True)
        assert "wall_time_s" in timed

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=15, deadline=None)
    def test_mean_of_per_class(self, seed):
        ds = random_dataset(n_per_class=6, classes=3, seed=seed, spread=1.0)
        report = dsi(ds)
        assert report.dsi == pytest.approx(
            np.mean(list(report.per_class_similarity.values())), abs=1e-15
        )


class TestDsiSubsampled:
    def test_deterministic(self):
        ds = random_dataset(n_per_class=80, seed=10, spread=2.0)
        a = dsi_subsampled(ds, subset_size=40, trials=4, seed=3)
        b = dsi_subsampled(ds, subset_size=40, trials=4, seed=3)
        assert a.subsample.values == b.subsample.values
        assert a.dsi == b.dsi

    def test_full_size_subset_equals_exact(self):
        ds = random_dataset(n_per_class=30, seed=11, spread=2.0)
        exact = dsi(ds)
        sub = dsi_subsampled(ds, subset_size=ds.n, trials=3, seed=0)
        assert sub.subsample.sd == 0.0
        assert sub.dsi == pytest.approx(exact.dsi, abs=1e-15)

    def test_report_aggregates(self):
        ds = random_dataset(n_per_class=60, seed=12, spread=1.0)
        report = dsi_subsampled(ds, subset_size=50, trials=5, seed=1)
        s = report.subsample
        assert s.trials == 5 and s.subset_size == 50 and s.seed == 1
        assert len(s.values) == 5
        assert s.mean == pytest.approx(np.mean(s.values))
        assert s.sd == pytest.approx(np.std(s.values, ddof=1))
        assert report.dsi == s.mean
        assert report.complexity == 1.0 - s.mean
        assert report.n_points == ds.n  # reports the full dataset size

    def test_estimates_track_exact_value(self):
        ds = random_dataset(n_per_class=150, seed=13, spread=3.0)
        exact = dsi(ds).dsi
        est = dsi_subsampled(ds, subset_size=120, trials=6, seed=2).dsi
        assert est == pytest.approx(exact, abs=0.1)

    def test_single_trial_sd_zero(self):
        ds = random_dataset(n_per_class=20, seed=14)
        assert dsi_subsampled(ds, subset_size=20, trials=1).subsample.sd == 0.0

    def test_impossible_subset_raises(self):
        # subsets of size 2 can never hold two points of each class
        ds = random_dataset(n_per_class=50, seed=15)
        with pytest.raises(DegenerateSubset, match="no usable subset"):
            dsi_subsampled(ds, subset_size=2, trials=1, max_retries=5)

    def test_subset_size_validated(self):
        ds = random_dataset(n_per_class=10, seed=16)
        with pytest.raises(ValueError, match="subset_size"):
            dsi_subsampled(ds, subset_size=0)
        with pytest.raises(ValueError, match="subset_size"):
            dsi_subsampled(ds, subset_size=21)

    def test_trials_validated(self):
        ds = random_dataset(n_per_class=10, seed=17)
        with pytest.raises(ValueError, match="trials"):
            dsi_subsampled(ds, subset_size=10, trials=0)

    def test_no_cap_on_subsets(self):
        # the exact cap does not apply: subsets are bounded by subset_size
        ds = random_dataset(n_per_class=40, seed=18)
        report = dsi_subsampled(ds, subset_size=30, trials=2)
        assert report.subsample is not None


class TestDistributionIdentity:
    def test_identical_samples_near_zero(self):
        g = rng(20)
        a = g.normal(size=(400, 2))
        b = g.normal(size=(400, 2))
        assert distribution_identity_score(a, b) < 0.08

    def test_disjoint_samples_near_one(self):
        g = rng(21)
        a = g.normal(size=(200, 2))
        b = g.normal(size=(200, 2)) + 50.0
        assert distribution_identity_score(a, b) > 0.9

    def test_one_dimensional_samples(self):
        g = rng(22)
        score = distribution_identity_score(g.normal(size=300), g.normal(size=300))
        assert 0.0 <= score < 0.15

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="feature dimension"):
            distribution_identity_score(np.ones((3, 2)), np.ones((3, 3)))

    def test_tiny_samples_rejected(self):
        with pytest.raises(DegenerateClass):
            distribution_identity_score(np.ones((1, 2)), np.ones((5, 2)))

    def test_symmetry(self):
        g = rng(23)
        a = g.normal(size=(50, 2))
        b = g.normal(size=(60, 2)) + 1.0
        assert distribution_identity_score(a, b) == pytest.approx(
            distribution_identity_score(b, a), abs=1e-12
        )
