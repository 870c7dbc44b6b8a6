"""Cost-stability and limited-outlier diagnostics on observed data.

Both checks run on P-hat, never on the unobservable P, so every verdict is
advisory. Hidden constants are fixed to 1; reports carry the threshold next
to the estimate so a caller can apply their own.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from core.cost import nearest
from core.types import CenterSet, Dataset, WeightedPointSet, as_arrays
from solver.kmeans import DEFAULT_RESTARTS, SolveConfig, solve
from utils.validators import (
    InvalidInputError,
    validate_count,
    validate_dimension,
    validate_nonnegative,
    validate_positive,
)

logger = logging.getLogger(__name__)

RADIUS_RATIO_LIMIT = 8.0
DEFAULT_TRIM = 0.01
ALPHA_GAP_FLOOR = 1e-6


@dataclass(frozen=True)
class GammaEstimate:
    gamma_hat: float
    opt_k: float
    opt_k_minus_1: float


@dataclass(frozen=True)
class StabilityVerdict:
    holds: bool
    threshold: float
    clamped: bool


@dataclass
class RadiusReport:
    max_ratio: float
    max_radius: np.ndarray
    rms_radius: np.ndarray
    ratios: np.ndarray  # NaN for empty clusters
    empty_clusters: List[int] = field(default_factory=list)
    trimmed: int = 0
    lost_clusters: List[int] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.max_ratio <= RADIUS_RATIO_LIMIT


@dataclass
class AssumptionReport:
    gamma_hat: float
    gamma_threshold: float
    max_radius_ratio: float
    trimmed_max_radius_ratio: float
    verdicts: Dict[str, bool]
    opt_k: float
    opt_k_minus_1: float
    flags: List[str] = field(default_factory=list)


def estimate_gamma(P_hat: Dataset | WeightedPointSet, k: int, seed: int = 0) -> GammaEstimate:
    """gamma_hat = OPT~(k-1) / OPT~(k) - 1, both from best-of-10 solves."""
    validate_count(k, "k", minimum=2)
    opt_k = solve(P_hat, SolveConfig(k, restarts=DEFAULT_RESTARTS, seed=seed))[1]
    opt_km1 = solve(P_hat, SolveConfig(k - 1, restarts=DEFAULT_RESTARTS, seed=seed))[1]
    if opt_k <= 0:
        raise InvalidInputError(f"estimate_gamma: OPT~({k}) is zero; data has at most {k} distinct points")
    return GammaEstimate(opt_km1 / opt_k - 1.0, opt_k, opt_km1)


def stability_threshold(alpha: float, level: float, n: int, d: int, k: int, opt: float) -> tuple[float, bool]:
    """alpha·(1 + level·n·d·log²(kd/sqrt(alpha-1))/OPT) and whether sqrt(alpha-1) was clamped."""
    alpha = float(alpha)
    level = validate_nonnegative(level, "level")
    opt = validate_positive(opt, "opt")
    gap = math.sqrt(alpha - 1.0) if alpha > 1.0 else 0.0
    clamped = gap < ALPHA_GAP_FLOOR
    if clamped:
        logger.warning("stability threshold: alpha=%.6g leaves no gap; clamping sqrt(alpha-1) to %g",
                       alpha, ALPHA_GAP_FLOOR)
        gap = ALPHA_GAP_FLOOR
    log_term = math.log(k * d / gap) ** 2
    return alpha * (1.0 + level * n * d * log_term / opt), clamped


def check_stability(
    gamma_hat: float, alpha: float, level: float, n: int, d: int, k: int, opt: float
) -> StabilityVerdict:
    threshold, clamped = stability_threshold(alpha, level, n, d, k, opt)
    return StabilityVerdict(bool(gamma_hat >= threshold), threshold, clamped)


# ────────────────────────────────────────────────────────────────────────────
# Radius ratios
# ────────────────────────────────────────────────────────────────────────────
def _radius_report(d2: np.ndarray, labels: np.ndarray, weights: np.ndarray, k: int) -> RadiusReport:
    counts = np.bincount(labels, minlength=k)
    max_d2 = np.zeros(k)
    np.maximum.at(max_d2, labels, d2)
    wsum = np.bincount(labels, weights=weights, minlength=k)
    wd2 = np.bincount(labels, weights=weights * d2, minlength=k)

    r_max = np.sqrt(max_d2)
    r_rms = np.sqrt(np.divide(wd2, wsum, out=np.zeros(k), where=wsum > 0))
    ratios = np.full(k, np.nan)
    for i in range(k):
        if counts[i] == 0:
            continue
        # a cluster of identical points counts as perfectly tight
        ratios[i] = 1.0 if r_max[i] == 0 else r_max[i] / r_rms[i]

    empty = [int(i) for i in np.flatnonzero(counts == 0)]
    if empty:
        logger.warning("radius ratios: clusters %s are empty and excluded", empty)
    max_ratio = float(np.nanmax(ratios)) if np.any(counts > 0) else float("nan")
    return RadiusReport(max_ratio, r_max, r_rms, ratios, empty)


def radius_ratios(P_hat: Dataset | WeightedPointSet, centers: CenterSet) -> RadiusReport:
    """Per-cluster r_i (max distance) and r-bar_i (RMS distance) under ``centers``.

    Verdict: max_i r_i / r-bar_i <= 8.
    """
    points, weights = as_arrays(P_hat)
    validate_dimension(points.shape[1], centers.d)
    labels, d2 = nearest(points, centers.centers)
    return _radius_report(d2, labels, weights, centers.k)


def trimmed_radius_ratios(
    P_hat: Dataset | WeightedPointSet, centers: CenterSet, trim_fraction: float = DEFAULT_TRIM
) -> RadiusReport:
    """radius_ratios after dropping the ceil(trim_fraction·n) farthest points globally."""
    trim_fraction = float(trim_fraction)
    if not 0.0 <= trim_fraction < 1.0:
        raise InvalidInputError(f"trim_fraction: must lie in [0, 1), got {trim_fraction}")
    points, weights = as_arrays(P_hat)
    validate_dimension(points.shape[1], centers.d)
    labels, d2 = nearest(points, centers.centers)
    n = points.shape[0]
    drop = min(math.ceil(trim_fraction * n - 1e-9), n - 1) if trim_fraction > 0 else 0

    keep = np.ones(n, dtype=bool)
    if drop:
        # stable sort: among equal distances the later points are trimmed first
        order = np.argsort(d2, kind="stable")
        keep[order[n - drop:]] = False
    report = _radius_report(d2[keep], labels[keep], weights[keep], centers.k)

    before = set(np.unique(labels).tolist())
    after = set(np.unique(labels[keep]).tolist())
    report.trimmed = int(drop)
    report.lost_clusters = sorted(before - after)
    if report.lost_clusters:
        logger.warning("trimming %d points removed whole clusters %s", drop, report.lost_clusters)
    return report


def assumption_report(
    P_hat: Dataset | WeightedPointSet,
    k: int,
    alpha: float = 1.0,
    level: float = 0.0,
    seed: int = 0,
    trim_fraction: float = DEFAULT_TRIM,
) -> AssumptionReport:
    """Stability, radius and trimmed-radius diagnostics for one dataset."""
    points, _ = as_arrays(P_hat)
    n, d = points.shape
    gamma = estimate_gamma(P_hat, k, seed)
    verdict = check_stability(gamma.gamma_hat, alpha, level, n, d, k, gamma.opt_k)
    centers, _ = solve(P_hat, SolveConfig(k, restarts=DEFAULT_RESTARTS, seed=seed))
    plain = radius_ratios(P_hat, centers)
    trimmed = trimmed_radius_ratios(P_hat, centers, trim_fraction)

    flags: List[str] = []
    if verdict.clamped:
        flags.append("alpha-clamped")
    if plain.empty_clusters:
        flags.append("empty-clusters")
    if trimmed.lost_clusters:
        flags.append("trim-removed-clusters")
    return AssumptionReport(
        gamma_hat=gamma.gamma_hat,
        gamma_threshold=verdict.threshold,
        max_radius_ratio=plain.max_ratio,
        trimmed_max_radius_ratio=trimmed.max_ratio,
        verdicts={
            "cost_stable": verdict.holds,
            "limited_outliers": plain.holds,
            "limited_outliers_trimmed": trimmed.holds,
        },
        opt_k=gamma.opt_k,
        opt_k_minus_1=gamma.opt_k_minus_1,
        flags=flags,
    )
