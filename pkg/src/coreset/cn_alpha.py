"""Filtered cluster-wise uniform-sampling coreset (CN-alpha).

Steps: estimate a solution on P-hat, drop points farther than R_i from their
center, then sample each surviving cluster uniformly and reweight it back to
its filtered size.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Tuple

import numpy as np

from core.cost import fsum, nearest
from core.types import Dataset, WeightedPointSet
from coreset.cn import ConstructionError
from noise.rng import SeededRng, as_rng
from solver.kmeans import estimate_opt
from utils.helpers import floor_size
from utils.validators import InvalidInputError, validate_count, validate_epsilon, validate_nonnegative

logger = logging.getLogger(__name__)

RadiusRule = Literal["empirical", "theory"]
# sqrt(alpha - 1) floor for alpha <= 1
ALPHA_GAP_FLOOR = 1e-6


@dataclass(frozen=True, eq=False)
class ClusterTrace:
    center: np.ndarray
    r_hat: float
    radius: float
    n_hat: int
    n_filtered: int
    n_sampled: int

    @property
    def retention(self) -> float:
        return self.n_filtered / self.n_hat if self.n_hat else 0.0


@dataclass(frozen=True, eq=False)
class CnAlphaTrace:
    clusters: Tuple[ClusterTrace, ...]
    opt_estimate: float
    level: float
    radius_rule: str

    @property
    def k(self) -> int:
        return len(self.clusters)


def cn_alpha_cap(eps: float) -> int:
    """Per-cluster sample cap ``9/eps + 6/eps^2``, truncated (96 at eps=0.3)."""
    eps = validate_epsilon(eps)
    return floor_size(9.0 / eps + 6.0 / eps**2)


def _alpha_gap(alpha: float) -> float:
    gap = math.sqrt(max(alpha - 1.0, 0.0))
    if gap < ALPHA_GAP_FLOOR:
        logger.warning("alpha=%.6g <= 1: sqrt(alpha - 1) clamped to %.0e", alpha, ALPHA_GAP_FLOOR)
        return ALPHA_GAP_FLOOR
    return gap


def filter_radius(
    r_hat: float,
    level: float,
    k: int,
    d: int,
    rule: RadiusRule = "empirical",
    alpha: float = 1.0,
) -> float:
    """Ball radius R_i around center i.

    ``empirical``: r_hat + sqrt(d)·ln(10·(1 + level·k·d)).
    ``theory``:    3·r_hat + sqrt(d)·ln((1 + level·k·d)/sqrt(alpha - 1)).
    """
    noise = 1.0 + level * k * d
    if rule == "empirical":
        return r_hat + math.sqrt(d) * math.log(10.0 * noise)
    if rule == "theory":
        return 3.0 * r_hat + math.sqrt(d) * math.log(noise / _alpha_gap(alpha))
    raise InvalidInputError(f"radius_rule: unknown rule {rule!r}")


def build_cn_alpha(
    P_hat: Dataset,
    eps: float,
    level: float,
    k: int,
    rng: SeededRng | int,
    *,
    radius_rule: RadiusRule = "empirical",
    alpha: float = 1.0,
) -> Tuple[WeightedPointSet, CnAlphaTrace]:
    """Build the CN-alpha coreset of ``P_hat``.

    ``level`` is θ for model I, σ² for model II and σ²·trace(Σ)/d for the
    correlated model. Raises ConstructionError if the radius filter empties a
    cluster.
    """
    eps = validate_epsilon(eps)
    level = validate_nonnegative(level, "level")
    validate_count(k, "k")
    if not isinstance(rng, SeededRng):
        rng = SeededRng(int(rng))

    centers, opt = estimate_opt(P_hat, k, rng.stream("estimate_opt"))
    n, d = P_hat.n, P_hat.d
    if opt > 0 and level > opt / (n * d):
        logger.warning(
            "noise level %.4g exceeds OPT/(nd) = %.4g; the CN-alpha guarantee assumes otherwise",
            level,
            opt / (n * d),
        )

    labels, d2 = nearest(P_hat.points, centers.centers)
    cap = cn_alpha_cap(eps)

    picked, weights, owner, traces = [], [], [], []
    for i in range(k):
        members = np.flatnonzero(labels == i)
        n_hat = members.size
        r_hat = math.sqrt(fsum(d2[members]) / n_hat) if n_hat else 0.0
        radius = filter_radius(r_hat, level, k, d, radius_rule, alpha)
        kept = members[np.sqrt(d2[members]) <= radius]
        if kept.size == 0:
            raise ConstructionError(
                f"cluster {i}: radius filter (R={radius:.4g}) removed every point "
                f"({n_hat} assigned)",
                cluster=i,
            )
        m_i = min(kept.size, cap)
        sample = np.sort(rng.stream("cluster", i).choice(kept, size=m_i, replace=False))
        picked.append(sample)
        weights.append(np.full(m_i, kept.size / m_i))
        owner.append(np.full(m_i, i))
        traces.append(
            ClusterTrace(
                center=centers.centers[i].copy(),
                r_hat=r_hat,
                radius=radius,
                n_hat=int(n_hat),
                n_filtered=int(kept.size),
                n_sampled=int(m_i),
            )
        )

    idx = np.concatenate(picked)
    S = WeightedPointSet(
        P_hat.points[idx],
        np.concatenate(weights),
        source_index=idx,
        source_cluster=np.concatenate(owner),
    )
    trace = CnAlphaTrace(tuple(traces), opt, level, radius_rule)
    return S, trace


def uniform_sample_with_replacement(
    cluster: Dataset, m: int, rng: np.random.Generator | SeededRng | int | None
) -> WeightedPointSet:
    """Uniform i.i.d. sample of ``m`` points, each weighted ``n/m``.

    The with-replacement twin of the per-cluster step above; the center
    movement it causes has the closed-form mean OPT/(n·m).
    """
    validate_count(m, "m")
    idx = as_rng(rng).integers(0, cluster.n, size=m)
    return WeightedPointSet(cluster.points[idx], np.full(m, cluster.n / m), source_index=idx)
