"""
instances.py
-------------
Small worked instances with known optima: the two-point 1-means line, the
four-site beta grid, the 1-median outlier pair and the scaled-basis
lower-bound instance. Generators are deterministic; only the cluster-blob
generator and the candidate builder take a seed.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from core.types import Dataset, WeightedPointSet
from metrics.err import CandidateCenters
from noise.rng import SeededRng, as_rng
from utils.validators import InvalidInputError, validate_count, validate_nonnegative

SQRT2 = math.sqrt(2.0)
LOWER_BOUND_SCALE = 100.0


def gen_two_point(n: int) -> Dataset:
    """n/2 points at -1 followed by n/2 at +1; OPT(k=1) = n at center 0."""
    validate_count(n, "n", minimum=2)
    if n % 2:
        raise InvalidInputError(f"n: must be even, got {n}")
    half = n // 2
    return Dataset(np.concatenate([np.full(half, -1.0), np.full(half, 1.0)]).reshape(-1, 1))


def beta_sites(beta: float) -> np.ndarray:
    b = beta * SQRT2 / 2.0
    return np.array([-2.0 * SQRT2 - b, -b, b, 2.0 * SQRT2 + b])


def gen_beta_grid(n: int, beta: float) -> Dataset:
    """n/4 points at each of the four beta-parameterised sites, grouped by site.

    At beta = 2.5 the sites are +-1.25·sqrt(2) and +-3.25·sqrt(2), with
    OPT(k=3) = n and OPT(k=2) = 2n.
    """
    validate_count(n, "n", minimum=4)
    if n % 4:
        raise InvalidInputError(f"n: must be divisible by 4, got {n}")
    beta = float(beta)
    if not beta >= 2.0:
        raise InvalidInputError(f"beta: must be >= 2, got {beta}")
    return Dataset(np.repeat(beta_sites(beta), n // 4).reshape(-1, 1))


def gen_outlier_median(n: int) -> Tuple[Dataset, WeightedPointSet]:
    """P: n-1 points at 0 and one at 1. S: the same with the outlier moved to 1/n.

    Under 1-median both optima sit at 0, so Err_1(S, P) = 0, while the
    center {0} alone shows Err(S, P) >= n - 1.
    """
    validate_count(n, "n", minimum=2)
    base = np.zeros(n)
    p = base.copy()
    p[-1] = 1.0
    s = base.copy()
    s[-1] = 1.0 / n
    return Dataset(p.reshape(-1, 1)), WeightedPointSet(s.reshape(-1, 1), np.ones(n))


def gen_lower_bound_instance(n: int) -> Dataset:
    """p_i = 100·n·e_i in R^n, meant for k = n - 1.

    Every pair of sites is 100·n·sqrt(2) apart, so merging any two costs
    OPT = 10^4·n^2.
    """
    validate_count(n, "n", minimum=4)
    return Dataset(LOWER_BOUND_SCALE * n * np.eye(n))


def lower_bound_candidates(
    P_hat: Dataset | WeightedPointSet,
    count: int,
    rng: np.random.Generator | SeededRng | int | None = None,
) -> CandidateCenters:
    """(n-1)-center sets that keep every point but one random pair, which is
    replaced by its midpoint."""
    validate_count(count, "count")
    points = P_hat.points
    n = points.shape[0]
    if n < 3:
        raise InvalidInputError(f"lower_bound_candidates: need at least 3 points, got {n}")
    gen = as_rng(rng)
    out = np.empty((count, n - 1, points.shape[1]))
    for c in range(count):
        i, j = sorted(gen.choice(n, size=2, replace=False).tolist())
        rest = np.delete(points, [i, j], axis=0)
        out[c] = np.vstack([rest, (points[i] + points[j]) / 2.0])
    return CandidateCenters(out)


def gen_separated_clusters(
    k: int,
    per_cluster: int,
    d: int = 2,
    spread: float = 1.0,
    seed: int = 0,
) -> Dataset:
    """k Gaussian blobs of ``per_cluster`` points, grouped by cluster.

    Blob i is centred at 20·i·spread on the first axis (20·i when spread = 0),
    far enough apart that best-of-restarts k-means recovers the blobs.
    """
    validate_count(k, "k")
    validate_count(per_cluster, "per_cluster")
    validate_count(d, "d")
    spread = validate_nonnegative(spread, "spread")
    gen = SeededRng(seed).stream("separated_clusters")
    step = 20.0 * (spread if spread > 0 else 1.0)
    centers = np.zeros((k, d))
    centers[:, 0] = step * np.arange(k)
    blobs = [c + spread * gen.standard_normal((per_cluster, d)) for c in centers]
    return Dataset(np.vstack(blobs))
