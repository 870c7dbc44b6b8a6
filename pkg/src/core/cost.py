"""The (k,z) cost functional, nearest-center assignment and 1-mean identities."""
from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist

from core.types import CenterSet, Dataset, PowerZ, WeightedPointSet, as_arrays, as_power
from utils.validators import InvalidInputError, validate_dimension


def _check(points: np.ndarray, centers: CenterSet) -> None:
    if not isinstance(centers, CenterSet):
        raise InvalidInputError(f"centers: expected CenterSet, got {type(centers).__name__}")
    if centers.k < 1:
        raise InvalidInputError("centers: empty center list")
    validate_dimension(points.shape[1], centers.d)


def squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """``(n, k)`` matrix of squared Euclidean distances."""
    if points.shape[0] == 0:
        return np.zeros((0, centers.shape[0]))
    return cdist(points, centers, metric="sqeuclidean")


def nearest(points: np.ndarray, centers: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Labels and squared distances to the nearest center.

    ``np.argmin`` returns the first minimum, so ties go to the lowest index.
    """
    d2 = squared_distances(points, centers)
    if d2.shape[0] == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0)
    labels = np.argmin(d2, axis=1)
    return labels, d2[np.arange(d2.shape[0]), labels]


def _powered(d2: np.ndarray, z: float) -> np.ndarray:
    if z == 2.0:
        return d2
    return np.power(np.sqrt(d2), z)


def fsum(values: np.ndarray) -> float:
    """Compensated sum, independent of the order rounding errors pile up in."""
    return math.fsum(np.asarray(values, dtype=np.float64).tolist())


def cost(data: Dataset | WeightedPointSet, centers: CenterSet, z: PowerZ = 2.0) -> float:
    """Return ``sum_x w(x) * min_c ||x - c||^z``."""
    z = as_power(z)
    points, weights = as_arrays(data)
    _check(points, centers)
    _, d2 = nearest(points, centers.centers)
    return fsum(weights * _powered(d2, z))


def point_costs(data: Dataset | WeightedPointSet, centers: CenterSet, z: PowerZ = 2.0) -> np.ndarray:
    """Per-point weighted contributions ``w(x) * d(x, C)^z``."""
    z = as_power(z)
    points, weights = as_arrays(data)
    _check(points, centers)
    _, d2 = nearest(points, centers.centers)
    return weights * _powered(d2, z)


def assign(data: Dataset | WeightedPointSet, centers: CenterSet) -> np.ndarray:
    points, _ = as_arrays(data)
    _check(points, centers)
    labels, _ = nearest(points, centers.centers)
    return labels.astype(np.int64)


def cluster_costs(data: Dataset | WeightedPointSet, centers: CenterSet, z: PowerZ = 2.0) -> np.ndarray:
    """Cost of each cluster under :func:`assign`; length ``k``."""
    z = as_power(z)
    points, weights = as_arrays(data)
    _check(points, centers)
    labels, d2 = nearest(points, centers.centers)
    contrib = weights * _powered(d2, z)
    return np.array([fsum(contrib[labels == j]) for j in range(centers.k)])


def mean(data: Dataset | WeightedPointSet) -> np.ndarray:
    points, weights = as_arrays(data)
    total = float(np.sum(weights))
    if points.shape[0] == 0 or total <= 0.0:
        raise InvalidInputError("mean: total weight must be positive")
    return np.average(points, axis=0, weights=weights)


def one_mean_cost_identity_check(data: Dataset, c: np.ndarray) -> Tuple[float, float]:
    """Return ``(cost(P, {c}), cost(P, {mu}) + n * ||c - mu||^2)``.

    Both sides agree to relative tolerance 1e-9; used by the self-test suite.
    """
    c = np.asarray(c, dtype=np.float64).reshape(1, -1)
    mu = mean(data)
    lhs = cost(data, CenterSet(c), 2.0)
    rhs = cost(data, CenterSet(mu.reshape(1, -1)), 2.0) + data.n * float(np.sum((c[0] - mu) ** 2))
    return lhs, rhs
