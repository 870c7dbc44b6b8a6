"""Report records for built coresets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.types import WeightedPointSet
from coreset.cn_alpha import CnAlphaTrace
from utils.validators import InvalidInputError


@dataclass
class ClusterSummary:
    cluster: int
    sampled: int
    weight: float
    n_hat: Optional[int] = None
    n_filtered: Optional[int] = None
    retention: Optional[float] = None


@dataclass
class CoresetSummary:
    size: int
    distinct_points: int
    total_weight: float
    clusters: List[ClusterSummary] = field(default_factory=list)
    opt_estimate: Optional[float] = None


def coreset_summary(S: WeightedPointSet, trace: Optional[CnAlphaTrace] = None) -> CoresetSummary:
    """Sizes, total weight and per-cluster retention ``|P'_i| / |P-hat_i|``.

    Per-cluster rows need cluster provenance on ``S``; with a CN-alpha trace
    they also carry the filter counts.
    """
    if S.n == 0:
        raise InvalidInputError("coreset_summary: empty coreset")
    distinct = int(np.unique(S.source_index).size) if S.source_index is not None else int(
        np.unique(S.points, axis=0).shape[0]
    )
    rows: List[ClusterSummary] = []
    if S.source_cluster is not None:
        k = trace.k if trace is not None else int(S.source_cluster.max()) + 1
        for i in range(k):
            mask = S.source_cluster == i
            row = ClusterSummary(cluster=i, sampled=int(mask.sum()), weight=float(S.weights[mask].sum()))
            if trace is not None:
                ct = trace.clusters[i]
                row.n_hat = ct.n_hat
                row.n_filtered = ct.n_filtered
                row.retention = ct.retention
            rows.append(row)
    return CoresetSummary(
        size=S.n,
        distinct_points=distinct,
        total_weight=S.total_weight,
        clusters=rows,
        opt_estimate=trace.opt_estimate if trace is not None else None,
    )
