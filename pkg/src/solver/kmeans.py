"""k-means++ seeding, weighted Lloyd iterations and best-of-restarts solving."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core.cost import fsum, nearest, squared_distances
from core.types import CenterSet, Dataset, WeightedPointSet, as_arrays
from noise.rng import SeededRng, as_rng
from utils.helpers import ordered_map
from utils.validators import InvalidInputError, validate_count, validate_nonnegative

logger = logging.getLogger(__name__)

# "default settings" of the evaluation solver
DEFAULT_MAX_ITER = 300
DEFAULT_RESTARTS = 10
DEFAULT_TOL = 1e-4
# ÕPT estimator: one seeding plus this many Lloyd steps
OPT_ESTIMATE_ITERS = 5
# relative rise tolerated as rounding
COST_RISE_TOL = 1e-12


class SolverError(RuntimeError):
    """Raised when a Lloyd step increases the cost beyond rounding."""


@dataclass(frozen=True)
class SolveConfig:
    k: int
    max_iter: int = DEFAULT_MAX_ITER
    restarts: int = DEFAULT_RESTARTS
    tol: float = DEFAULT_TOL
    seed: int = 0

    def __post_init__(self) -> None:
        validate_count(self.k, "k")
        validate_count(self.max_iter, "max_iter", minimum=0)
        validate_count(self.restarts, "restarts")
        validate_nonnegative(self.tol, "tol")


def _distinct_positive(points: np.ndarray, weights: np.ndarray) -> int:
    live = points[weights > 0]
    if live.shape[0] == 0:
        return 0
    return int(np.unique(live, axis=0).shape[0])


def _check_k(points: np.ndarray, weights: np.ndarray, k: int) -> None:
    validate_count(k, "k")
    distinct = _distinct_positive(points, weights)
    if k > distinct:
        raise InvalidInputError(f"k: {k} exceeds the {distinct} distinct points with positive weight")


def kmeanspp_seed(
    data: Dataset | WeightedPointSet,
    k: int,
    rng: np.random.Generator | SeededRng | int | None,
) -> CenterSet:
    """D² seeding: the first center by weight, the rest by weight·d²."""
    gen = as_rng(rng)
    points, weights = as_arrays(data)
    _check_k(points, weights, k)

    n = points.shape[0]
    chosen = [int(gen.choice(n, p=weights / weights.sum()))]
    d2 = squared_distances(points, points[chosen[-1]][None, :])[:, 0]
    for _ in range(1, k):
        mass = weights * d2
        total = mass.sum()
        if total <= 0.0:
            # All remaining mass sits on chosen points; k <= distinct rules this out.
            raise InvalidInputError("k: not enough distinct points to seed")
        chosen.append(int(gen.choice(n, p=mass / total)))
        d2 = np.minimum(d2, squared_distances(points, points[chosen[-1]][None, :])[:, 0])
    return CenterSet(points[chosen])


def _weighted_means(points: np.ndarray, weights: np.ndarray, labels: np.ndarray, k: int):
    mass = np.bincount(labels, weights=weights, minlength=k)
    sums = np.column_stack(
        [np.bincount(labels, weights=weights * points[:, j], minlength=k) for j in range(points.shape[1])]
    )
    return sums, mass


def lloyd(
    data: Dataset | WeightedPointSet,
    init: CenterSet,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
    trace: Optional[List[float]] = None,
) -> Tuple[CenterSet, float]:
    """Alternate assignment and weighted-mean steps.

    Stops after ``max_iter`` steps, when the relative improvement drops below
    ``tol`` or when the centers stop moving. Empty clusters are reseeded to
    the point farthest from its center. If ``trace`` is given, the cost after
    every accepted step is appended to it (the initial cost first).
    """
    points, weights = as_arrays(data)
    centers = np.array(init.centers, dtype=np.float64, copy=True)
    if centers.shape[1] != points.shape[1]:
        raise InvalidInputError("centers: dimension mismatch with data")
    k = centers.shape[0]

    labels, d2 = nearest(points, centers)
    current = fsum(weights * d2)
    if trace is not None:
        trace.append(current)

    for step in range(max_iter):
        sums, mass = _weighted_means(points, weights, labels, k)
        updated = centers.copy()
        live = mass > 0
        updated[live] = sums[live] / mass[live][:, None]

        if not live.all():
            far = np.where(weights > 0, d2, -1.0)
            for j in np.flatnonzero(~live):
                idx = int(np.argmax(far))
                updated[j] = points[idx]
                far[idx] = -1.0
                logger.debug("lloyd: reseeded empty cluster %d at point %d", j, idx)

        new_labels, new_d2 = nearest(points, updated)
        new_cost = fsum(weights * new_d2)
        if new_cost > current * (1.0 + COST_RISE_TOL) + 1e-300:
            raise SolverError(f"lloyd: cost rose from {current:.10g} to {new_cost:.10g} at step {step}")
        if new_cost > current:
            # rounding-level increase; keep the previous state
            break

        moved = not np.array_equal(updated, centers)
        improvement = (current - new_cost) / current if current > 0 else 0.0
        centers, labels, d2, current = updated, new_labels, new_d2, new_cost
        if trace is not None:
            trace.append(current)
        if not moved or current == 0.0 or improvement < tol:
            break

    return CenterSet(centers), current


def solve(data: Dataset | WeightedPointSet, cfg: SolveConfig) -> Tuple[CenterSet, float]:
    """Best of ``cfg.restarts`` independent seed + Lloyd runs.

    Restart ``r`` draws from substream ``("restart", r)`` of ``cfg.seed``; the
    lowest cost wins, ties to the lowest restart index.
    """
    points, weights = as_arrays(data)
    _check_k(points, weights, cfg.k)
    root = SeededRng(cfg.seed)

    def _run(r: int) -> Tuple[CenterSet, float]:
        init = kmeanspp_seed(data, cfg.k, root.stream("restart", r))
        return lloyd(data, init, cfg.max_iter, cfg.tol)

    results = ordered_map(_run, range(cfg.restarts))
    best = min(range(len(results)), key=lambda r: (results[r][1], r))
    return results[best]


def estimate_opt(
    data: Dataset | WeightedPointSet,
    k: int,
    rng: np.random.Generator | SeededRng | int | None,
) -> Tuple[CenterSet, float]:
    """ÕPT: one k-means++ seeding followed by five Lloyd steps."""
    gen = as_rng(rng)
    init = kmeanspp_seed(data, k, gen)
    return lloyd(data, init, max_iter=OPT_ESTIMATE_ITERS, tol=0.0)


def weighted_median_1d(data: Dataset | WeightedPointSet) -> CenterSet:
    """Exact 1-median (z = 1, k = 1) of one-dimensional weighted data.

    Returns the lower weighted median: the smallest x with at least half the
    weight at or below it.
    """
    points, weights = as_arrays(data)
    if points.shape[1] != 1:
        raise InvalidInputError(f"weighted_median_1d: expects d = 1, got d = {points.shape[1]}")
    total = float(weights.sum())
    if points.shape[0] == 0 or total <= 0:
        raise InvalidInputError("weighted_median_1d: total weight must be positive")
    order = np.argsort(points[:, 0], kind="stable")
    cum = np.cumsum(weights[order])
    idx = int(np.searchsorted(cum, total / 2.0, side="left"))
    return CenterSet(points[order[min(idx, len(order) - 1)]].reshape(1, 1))
