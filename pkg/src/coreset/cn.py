"""Baseline sensitivity-sampling coreset (CN)."""
from __future__ import annotations

import logging
from enum import Enum

import numpy as np

from core.cost import nearest
from core.types import Dataset, WeightedPointSet
from noise.rng import SeededRng
from solver.kmeans import estimate_opt
from utils.helpers import floor_size
from utils.validators import validate_count, validate_epsilon

logger = logging.getLogger(__name__)


class Algorithm(str, Enum):
    CN = "CN"
    CN_ALPHA = "CNalpha"


class ConstructionError(RuntimeError):
    """Raised when a coreset cannot be built from the given data."""

    def __init__(self, message: str, cluster: int | None = None):
        super().__init__(message)
        self.cluster = cluster


def cn_size(k: int, eps: float) -> int:
    """``3 k^1.5 / eps^2``, truncated: 9486 for k=10, eps=0.1."""
    validate_count(k, "k")
    eps = validate_epsilon(eps)
    return floor_size(3.0 * k**1.5 / eps**2)


def sensitivities(P_hat: Dataset, centers, opt: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-point sensitivity upper bounds and the cluster labels behind them.

    s(p) = d²(p, C)/ÕPT + 1/(k·|cluster(p)|)
    """
    k = centers.k
    labels, d2 = nearest(P_hat.points, centers.centers)
    sizes = np.bincount(labels, minlength=k).astype(np.float64)
    spread = d2 / opt if opt > 0 else np.zeros_like(d2)
    return spread + 1.0 / (k * sizes[labels]), labels


def build_cn(P_hat: Dataset, eps: float, k: int, rng: SeededRng | int) -> WeightedPointSet:
    """Importance-sample ``cn_size(k, eps)`` points i.i.d. with replacement.

    Each drawn copy carries weight 1/(m·q(p)), so the weighted cost of any
    fixed center set is an unbiased estimate of cost(P_hat, C).
    """
    eps = validate_epsilon(eps)
    if not isinstance(rng, SeededRng):
        rng = SeededRng(int(rng))
    centers, opt = estimate_opt(P_hat, k, rng.stream("estimate_opt"))
    scores, labels = sensitivities(P_hat, centers, opt)

    m = cn_size(k, eps)
    if m > P_hat.n:
        logger.warning("CN sample size %d exceeds n=%d; clamping to n", m, P_hat.n)
        m = P_hat.n

    q = scores / scores.sum()
    idx = rng.stream("cn_sample").choice(P_hat.n, size=m, replace=True, p=q)
    weights = 1.0 / (m * q[idx])
    return WeightedPointSet(P_hat.points[idx], weights, source_index=idx, source_cluster=labels[idx])
