import math

import numpy as np
import pytest

from assumptions.stability import (
    assumption_report,
    check_stability,
    estimate_gamma,
    radius_ratios,
    stability_threshold,
    trimmed_radius_ratios,
)
from core.types import CenterSet, Dataset
from synthetic.instances import gen_separated_clusters
from utils.validators import InvalidInputError


def _outlier_cluster(n=100):
    pts = np.zeros((n, 1))
    pts[-1, 0] = 10.0
    return Dataset(pts)


def test_gamma_is_large_for_separated_blobs():
    P = gen_separated_clusters(3, 40, seed=0)
    est = estimate_gamma(P, 3)
    assert est.opt_k_minus_1 > est.opt_k > 0
    assert est.gamma_hat > 10.0
    with pytest.raises(InvalidInputError):
        estimate_gamma(P, 1)


def test_stability_threshold_values():
    thr, clamped = stability_threshold(1.5, 0.0, 100, 2, 3, 10.0)
    assert thr == 1.5 and not clamped
    gap = math.sqrt(0.5)
    thr, _ = stability_threshold(1.5, 0.01, 100, 2, 3, 10.0)
    assert thr == pytest.approx(1.5 * (1 + 0.01 * 200 * math.log(6 / gap) ** 2 / 10.0))


def test_stability_threshold_clamps_alpha_one():
    thr, clamped = stability_threshold(1.0, 0.01, 100, 2, 3, 10.0)
    assert clamped
    assert math.isfinite(thr)


def test_check_stability_verdict():
    assert check_stability(5.0, 1.5, 0.0, 100, 2, 3, 10.0).holds
    assert not check_stability(0.2, 1.5, 0.0, 100, 2, 3, 10.0).holds


def test_radius_ratio_of_tight_clusters():
    P = Dataset([[-1.0], [1.0], [9.0], [9.0]])
    report = radius_ratios(P, CenterSet([[0.0], [9.0]]))
    assert report.ratios.tolist() == pytest.approx([1.0, 1.0])
    assert report.holds


def test_single_outlier_breaks_and_trimming_restores():
    P = _outlier_cluster(100)
    C = CenterSet([[0.0]])
    plain = radius_ratios(P, C)
    assert plain.max_ratio == pytest.approx(10.0)
    assert not plain.holds
    trimmed = trimmed_radius_ratios(P, C, 0.01)
    assert trimmed.trimmed == 1
    assert trimmed.max_ratio == 1.0
    assert trimmed.holds
    assert trimmed.lost_clusters == []


def test_empty_clusters_are_reported():
    P = Dataset([[0.0], [1.0]])
    report = radius_ratios(P, CenterSet([[0.5], [100.0]]))
    assert report.empty_clusters == [1]
    assert np.isnan(report.ratios[1])
    assert report.max_ratio == pytest.approx(1.0)


def test_trimming_can_remove_a_whole_cluster():
    pts = np.zeros((100, 1))
    pts[-1, 0] = 100.0
    P = Dataset(pts)
    # every distance ties at zero; the later point is trimmed first
    report = trimmed_radius_ratios(P, CenterSet([[0.0], [100.0]]), 0.01)
    assert report.lost_clusters == [1]


def test_trimming_keeps_at_least_one_point():
    P = Dataset([[0.0], [1.0]])
    report = trimmed_radius_ratios(P, CenterSet([[0.0]]), 0.99)
    assert report.trimmed == 1
    with pytest.raises(InvalidInputError):
        trimmed_radius_ratios(P, CenterSet([[0.0]]), 1.0)


def test_assumption_report_on_blobs():
    P = gen_separated_clusters(3, 60, seed=1)
    report = assumption_report(P, 3, alpha=1.01, level=0.0)
    assert set(report.verdicts) == {"cost_stable", "limited_outliers", "limited_outliers_trimmed"}
    assert report.verdicts["cost_stable"]
    assert report.gamma_threshold == pytest.approx(1.01)
    assert "alpha-clamped" not in report.flags


def test_assumption_report_flags_clamped_alpha():
    P = gen_separated_clusters(2, 30, seed=1)
    report = assumption_report(P, 2, alpha=1.0, level=0.01)
    assert "alpha-clamped" in report.flags
