"""Point containers shared by every stage of the pipeline.

All three types are immutable: their arrays are copied on construction and
flagged read-only, so they may be shared between threads freely.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from utils.validators import (
    InvalidInputError,
    validate_points,
    validate_power,
    validate_weights,
)

# z = 2 is k-means, z = 1 is k-median.
PowerZ = float
KMEANS: PowerZ = 2.0
KMEDIAN: PowerZ = 1.0


def as_power(z: PowerZ) -> float:
    return validate_power(z)


def _frozen_int_array(values: Sequence[int] | np.ndarray, n: int, label: str) -> np.ndarray:
    arr = np.array(values, dtype=np.int64, copy=True).reshape(-1)
    if arr.shape[0] != n:
        raise InvalidInputError(f"{label}: expected {n} entries, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered collection of ``n`` points in ``R^d`` (the roles P, P-hat, P')."""

    points: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", validate_points(self.points, "dataset"))

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    @property
    def weights(self) -> np.ndarray:
        w = np.ones(self.n, dtype=np.float64)
        w.setflags(write=False)
        return w

    def take(self, indices: Sequence[int] | np.ndarray) -> "Dataset":
        return Dataset(self.points[np.asarray(indices, dtype=np.int64)])

    def concat(self, other: "Dataset") -> "Dataset":
        return Dataset(np.vstack([self.points, other.points]))

    def to_weighted(self) -> "WeightedPointSet":
        return WeightedPointSet(
            self.points,
            np.ones(self.n),
            source_index=np.arange(self.n),
        )

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class WeightedPointSet:
    """A coreset: points with nonnegative weights.

    ``source_index`` records which row of the sampled dataset each point came
    from and ``source_cluster`` the cluster it was drawn from; both are
    optional provenance.
    """

    points: np.ndarray
    weights: np.ndarray
    source_index: Optional[np.ndarray] = None
    source_cluster: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        pts = validate_points(self.points, "weighted set", allow_empty=True)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", validate_weights(self.weights, pts.shape[0]))
        if self.source_index is not None:
            object.__setattr__(
                self, "source_index", _frozen_int_array(self.source_index, pts.shape[0], "source_index")
            )
        if self.source_cluster is not None:
            object.__setattr__(
                self, "source_cluster", _frozen_int_array(self.source_cluster, pts.shape[0], "source_cluster")
            )

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def d(self) -> int:
        return int(self.points.shape[1])

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    def cluster_weight(self, cluster: int) -> float:
        if self.source_cluster is None:
            raise InvalidInputError("weighted set: no cluster provenance recorded")
        return float(np.sum(self.weights[self.source_cluster == cluster]))

    def concat(self, other: "WeightedPointSet") -> "WeightedPointSet":
        return WeightedPointSet(
            np.vstack([self.points, other.points]),
            np.concatenate([self.weights, other.weights]),
        )

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class CenterSet:
    """Ordered list of ``k`` centers; duplicates are allowed."""

    centers: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", validate_points(self.centers, "centers"))

    @property
    def k(self) -> int:
        return int(self.centers.shape[0])

    @property
    def d(self) -> int:
        return int(self.centers.shape[1])

    def with_center(self, center: Sequence[float] | np.ndarray) -> "CenterSet":
        extra = np.asarray(center, dtype=np.float64).reshape(1, -1)
        return CenterSet(np.vstack([self.centers, extra]))

    def __len__(self) -> int:
        return self.k


def as_arrays(data: Dataset | WeightedPointSet) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(points, weights)`` for either container."""
    if isinstance(data, (Dataset, WeightedPointSet)):
        return data.points, data.weights
    raise InvalidInputError(f"data: expected Dataset or WeightedPointSet, got {type(data).__name__}")
