"""Tests for CSD curves, variance, and the conjugacy/equivalence verdicts."""

from __future__ import annotations

import numpy as np
import pytest

from circspec import (
    CsdCurve,
    CsdReport,
    DensityHistogram,
    GridMismatchError,
    SpectralGrid,
    check_conjugacy,
    check_equivalence,
    csd,
    csd_variance,
    cumulative_csd,
    make_csd_report,
)

GRID = SpectralGrid(eps_max=6.0, bins=1000)


def _hist(density: np.ndarray, label: str = "", grid: SpectralGrid = GRID) -> DensityHistogram:
    frac = float(density.sum() * grid.bin_width)
    return DensityHistogram(grid=grid, density=density, in_range_fraction=frac, source_label=label)


def _random_hist(seed: int, label: str) -> DensityHistogram:
    density = np.random.default_rng(seed).uniform(0.0, 1.0, GRID.bins)
    return _hist(density, label)


class TestCsd:
    def test_self_difference_is_zero(self):
        h = _random_hist(0, "a")
        curve = csd(h, h)
        assert np.all(curve.delta == 0.0)
        assert csd_variance(curve) == 0.0

    def test_antisymmetry_exact(self):
        a, b = _random_hist(1, "a"), _random_hist(2, "b")
        forward = csd(a, b)
        backward = csd(b, a)
        assert np.array_equal(forward.delta, -backward.delta)
        assert csd_variance(forward) == csd_variance(backward)

    def test_labels_follow_histograms(self):
        curve = csd(_random_hist(1, "net"), _random_hist(2, "cue"))
        assert curve.labels == ("net", "cue")

    def test_grid_mismatch_rejected(self):
        other = SpectralGrid(eps_max=6.0, bins=500)
        density = np.zeros(500)
        with pytest.raises(GridMismatchError):
            csd(_random_hist(1, "a"), _hist(density, "b", other))


class TestCumulativeCsd:
    def test_zero_curve(self):
        curve = CsdCurve(grid=GRID, delta=np.zeros(GRID.bins))
        assert np.all(cumulative_csd(curve) == 0.0)

    def test_constant_one_curve_integrates_to_six(self):
        curve = CsdCurve(grid=GRID, delta=np.ones(GRID.bins))
        cumulative = cumulative_csd(curve)
        assert abs(cumulative[-1] - 6.0) <= 1e-10

    def test_equal_mass_cancels(self):
        a, b = _random_hist(3, "a"), _random_hist(4, "b")
        scale = a.density.sum() / b.density.sum()
        b = _hist(b.density * scale, "b")
        assert a.in_range_fraction == pytest.approx(b.in_range_fraction, abs=1e-12)
        cumulative = cumulative_csd(csd(a, b))
        assert abs(cumulative[-1]) <= 1e-10

    def test_prefix_sum_recurrence(self):
        curve = CsdCurve(grid=GRID, delta=np.random.default_rng(5).standard_normal(GRID.bins))
        cumulative = cumulative_csd(curve)
        w = GRID.bin_width
        for k in (1, 17, 500, 999):
            assert cumulative[k] == cumulative[k - 1] + curve.delta[k] * w


class TestCsdVariance:
    def test_zero_curve(self):
        assert csd_variance(CsdCurve(grid=GRID, delta=np.zeros(GRID.bins))) == 0.0

    def test_translation_invariance(self):
        delta = np.random.default_rng(6).standard_normal(GRID.bins)
        base = csd_variance(CsdCurve(grid=GRID, delta=delta))
        shifted = csd_variance(CsdCurve(grid=GRID, delta=delta + 5.0))
        assert shifted == pytest.approx(base, rel=1e-12)

    def test_population_form(self):
        delta = np.array([1.0, 2.0, 3.0, 4.0] * 250)
        assert csd_variance(CsdCurve(grid=GRID, delta=delta)) == pytest.approx(1.25, abs=1e-14)


class TestCheckConjugacy:
    def _report(self, delta: np.ndarray) -> CsdReport:
        curve = CsdCurve(grid=GRID, delta=delta)
        return CsdReport(
            curve=curve,
            cumulative=cumulative_csd(curve),
            variance=csd_variance(curve),
            conjugate=False,
        )

    def test_zero_curve_is_conjugate(self):
        assert check_conjugacy(self._report(np.zeros(GRID.bins)), tail_fraction=0.5, tol=1e-12)

    def test_constant_tail_offset_fails(self):
        delta = np.zeros(GRID.bins)
        delta[500:] = 1.0  # tail mass = 3.0
        report = self._report(delta)
        assert not check_conjugacy(report, tail_fraction=0.5, tol=0.05)

    def test_small_tail_spike_passes(self):
        delta = np.zeros(GRID.bins)
        delta[0] = 100.0
        delta[700] = 0.3  # below tol * 10 and tail mass 0.0018 <= tol
        assert check_conjugacy(self._report(delta), tail_fraction=0.5, tol=0.05)

    def test_tail_spike_beyond_ten_tol_fails(self):
        delta = np.zeros(GRID.bins)
        delta[700] = 0.6
        assert not check_conjugacy(self._report(delta), tail_fraction=0.5, tol=0.05)

    def test_tail_fraction_validation(self):
        report = self._report(np.zeros(GRID.bins))
        with pytest.raises(ValueError, match="tail_fraction"):
            check_conjugacy(report, tail_fraction=0.0, tol=0.05)
        with pytest.raises(ValueError, match="tail_fraction"):
            check_conjugacy(report, tail_fraction=1.5, tol=0.05)

    def test_full_window(self):
        delta = np.zeros(GRID.bins)
        delta[2] = 0.4
        assert check_conjugacy(self._report(delta), tail_fraction=1.0, tol=0.05)


class TestCheckEquivalence:
    def _report_pair(self, seed_a: int, seed_b: int) -> tuple[CsdReport, CsdReport]:
        a = make_csd_report(_random_hist(seed_a, "a"), _random_hist(seed_a + 100, "cue"))
        b = make_csd_report(_random_hist(seed_b, "b"), _random_hist(seed_b + 100, "cue"))
        return a, b

    def test_reflexivity(self):
        a, _ = self._report_pair(1, 2)
        verdict = check_equivalence(a, a, delta_threshold=1e-6)
        assert verdict.equivalent == (a.conjugate and a.conjugate)
        assert verdict.var_a == verdict.var_b

    def test_symmetry(self):
        a, b = self._report_pair(3, 4)
        forward = check_equivalence(a, b, delta_threshold=0.05)
        backward = check_equivalence(b, a, delta_threshold=0.05)
        assert forward.equivalent == backward.equivalent

    def test_monotone_threshold(self):
        a, b = self._report_pair(5, 6)
        small = check_equivalence(a, b, delta_threshold=1e-9)
        large = check_equivalence(a, b, delta_threshold=1e9)
        if small.equivalent:
            assert large.equivalent

    def test_requires_both_conjugacies(self):
        zero = _hist(np.zeros(GRID.bins), "flat")
        conj_report = make_csd_report(zero, zero)
        assert conj_report.conjugate
        bad = np.zeros(GRID.bins)
        bad[900] = 5.0
        non_conj_report = make_csd_report(_hist(bad, "spiky"), zero)
        assert not non_conj_report.conjugate
        verdict = check_equivalence(conj_report, non_conj_report, delta_threshold=1e9)
        assert not verdict.equivalent
        assert verdict.conjugate_a and not verdict.conjugate_b

    def test_variance_gap_gate(self):
        zero = _hist(np.zeros(GRID.bins), "flat")
        small = np.zeros(GRID.bins)
        small[600] = 0.2
        a = make_csd_report(zero, zero)
        b = make_csd_report(_hist(small, "s"), zero)
        assert a.conjugate and b.conjugate
        gap = abs(a.variance - b.variance)
        assert check_equivalence(a, b, delta_threshold=gap * 1.01).equivalent
        assert not check_equivalence(a, b, delta_threshold=gap * 0.5).equivalent

    def test_grid_mismatch_rejected(self):
        a, _ = self._report_pair(7, 8)
        other_grid = SpectralGrid(eps_max=6.0, bins=400)
        zero = DensityHistogram(grid=other_grid, density=np.zeros(400), in_range_fraction=0.0)
        b = make_csd_report(zero, zero)
        with pytest.raises(GridMismatchError):
            check_equivalence(a, b, delta_threshold=0.05)


class TestMakeCsdReport:
    def test_fields_are_consistent(self):
        a, cue = _random_hist(9, "net"), _random_hist(10, "cue")
        report = make_csd_report(a, cue, tail_fraction=0.4, tail_tol=0.02)
        np.testing.assert_array_equal(report.cumulative, cumulative_csd(report.curve))
        assert report.variance == csd_variance(report.curve)
        assert report.conjugate == check_conjugacy(report, tail_fraction=0.4, tol=0.02)
        assert report.tail_fraction == 0.4
        assert report.tail_tol == 0.02

    def test_negative_variance_rejected(self):
        curve = CsdCurve(grid=GRID, delta=np.zeros(GRID.bins))
        with pytest.raises(ValueError, match="variance"):
            CsdReport(curve=curve, cumulative=np.zeros(GRID.bins), variance=-1.0, conjugate=False)
