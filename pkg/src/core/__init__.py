"""Datasets, center sets, weighted sets and the (k,z) cost functional."""

from core.types import (
    KMEANS,
    KMEDIAN,
    CenterSet,
    Dataset,
    PowerZ,
    WeightedPointSet,
    as_arrays,
)
from core.cost import (
    assign,
    cluster_costs,
    cost,
    fsum,
    mean,
    nearest,
    one_mean_cost_identity_check,
    point_costs,
    squared_distances,
)

__all__ = [
    "KMEANS",
    "KMEDIAN",
    "CenterSet",
    "Dataset",
    "PowerZ",
    "WeightedPointSet",
    "as_arrays",
    "assign",
    "cluster_costs",
    "cost",
    "fsum",
    "mean",
    "nearest",
    "one_mean_cost_identity_check",
    "point_costs",
    "squared_distances",
]
