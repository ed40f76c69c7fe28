"""Studies, determinism, baselines and the verification suite."""

import numpy as np
import pytest

from pchaos import (
    ExperimentConfig,
    MeasureRep,
    Spectrum,
    growth_study,
    lemma1_measure,
    random_ensemble_study,
    verify_suite,
)
from pchaos import experiments
from pchaos.baselines import LEMMA1_C1_BOUND


def test_exact_first_order_ratios():
    cfg = ExperimentConfig(p=2, d=1, N_values=(6,), trials=25, seed=3)
    report = random_ensemble_study(cfg)
    (row,) = report.rows
    assert row.median_l1_ratio == pytest.approx(1.0, abs=1e-12)
    assert row.max_l1_ratio == pytest.approx(1.0, abs=1e-12)
    assert row.median_lq_ratio == pytest.approx(1.0, abs=1e-12)


def test_zero_trials_empty_report():
    cfg = ExperimentConfig(p=2, d=2, N_values=(4,), trials=0, seed=0)
    report = random_ensemble_study(cfg)
    assert report.rows == [] and report.passed


def test_determinism():
    cfg = ExperimentConfig(p=3, d=2, N_values=(3, 4), trials=20, seed=11)
    a = random_ensemble_study(cfg)
    b = random_ensemble_study(cfg)
    assert [r.to_dict() for r in a.rows] == [r.to_dict() for r in b.rows]


def test_growth_study_monotone():
    cfg = ExperimentConfig(p=2, d=2, N_values=(4, 6, 8), trials=60, seed=42)
    report = growth_study(cfg)
    medians = [row.median_l1_ratio for row in report.rows]
    assert medians == sorted(medians)
    assert report.meta["lq_band_ratio"] <= 2.0
    assert report.passed, report.failures


def test_growth_first_order_constant():
    cfg = ExperimentConfig(p=2, d=1, N_values=(4, 6, 8), trials=20, seed=5)
    report = growth_study(cfg)
    for row in report.rows:
        assert row.median_l1_ratio == pytest.approx(1.0, abs=1e-12)
        assert row.median_lq_ratio == pytest.approx(1.0, abs=1e-12)
    assert report.passed


def test_baseline_regression_p3():
    cfg = ExperimentConfig(p=3, d=2, N_values=(3, 5, 7), trials=100, seed=42)
    report = growth_study(cfg)
    assert report.passed, report.failures
    assert report.meta["lq_band_ratio"] <= 2.0


def test_c1_bound_baselines_match():
    from pchaos import lemma1_system

    for d, expected in LEMMA1_C1_BOUND.items():
        value = float(np.abs(lemma1_system(d).coefficients).sum())
        assert value == pytest.approx(expected, rel=1e-12)


class TestVerifySuite:
    def test_default_small_grid_passes(self):
        report = verify_suite([2, 3], [1, 2], N=4, seed=1)
        assert report.passed, report.failures()
        names = {check.name for check in report.checks}
        assert {
            "transform-roundtrip",
            "parseval",
            "fast-vs-naive",
            "convolution-theorem",
            "character-multiplicativity",
            "riesz-mass",
            "lemma1-pattern",
            "lemma1-membership",
            "lemma2-pattern",
            "rho-y-scaling",
            "decomposition",
            "young-bound",
            "order-projection",
            "sidon-exact-d1",
        } <= names
        for check in report.checks:
            assert check.residual <= check.tolerance

    def test_empty_grid(self):
        report = verify_suite([], [1], N=4)
        assert report.checks == [] and report.passed

    def test_corrupted_lemma1_yields_named_failure(self, monkeypatch):
        def corrupted(p, d, J, level, max_cells=None):
            nu = lemma1_measure(p, d, J, level, max_cells)
            coeffs = nu.spectrum.coeffs.copy()
            coeffs[1] += 0.25  # index 1 is always a matched or mismatched order-1..d index
            return MeasureRep(
                Spectrum(p, level, coeffs), nu.variation, nu.provenance
            )

        monkeypatch.setattr(experiments, "lemma1_measure", corrupted)
        report = verify_suite([3], [1], N=3, seed=1)
        assert not report.passed
        assert "lemma1-pattern" in report.failures()

    def test_report_dict_shape(self):
        report = verify_suite([2], [1], N=3, seed=0)
        payload = report.to_dict()
        assert payload["passed"] is True
        assert all(
            {"name", "residual", "tolerance", "passed"} <= set(c) for c in payload["checks"]
        )
