"""Empirical approximation ratio, theoretical bound and tightness for one coreset."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from core.cost import cost
from core.types import CenterSet, Dataset, WeightedPointSet
from coreset.cn import Algorithm
from metrics.bounds import NoiseLike, theoretical_bound
from noise.models import NoiseSpec
from solver.kmeans import DEFAULT_RESTARTS, SolveConfig, solve
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QualityReport:
    r_tilde: float
    u: float
    kappa: float
    algorithm: Algorithm
    level: float
    eps: float

    @classmethod
    def build(cls, r_tilde: float, u: float, algorithm: Algorithm | str, level: float, eps: float) -> "QualityReport":
        if u < 1.0:
            raise InvalidInputError(f"u: bound must be >= 1, got {u}")
        return cls(float(r_tilde), float(u), float(r_tilde) / float(u), Algorithm(algorithm), float(level), float(eps))


def empirical_ratio(
    P: Dataset | WeightedPointSet,
    S: WeightedPointSet,
    k: int,
    seed: int = 0,
    reference: Optional[CenterSet] = None,
) -> float:
    """r~_S = cost(P, C_S) / cost(P, C_P), both solved with best-of-10 restarts.

    ``reference`` lets a caller reuse C_P across many coresets of the same P.
    """
    if S.n == 0:
        raise InvalidInputError("empirical_ratio: S is empty")
    cfg = SolveConfig(k, restarts=DEFAULT_RESTARTS, seed=seed)
    c_s, _ = solve(S, cfg)
    c_p = reference if reference is not None else solve(P, cfg)[0]
    denom = cost(P, c_p)
    if denom <= 0:
        # P has at most k distinct points; any exact solution is optimal
        return 1.0 if cost(P, c_s) == 0 else float("inf")
    return cost(P, c_s) / denom


def quality_report(
    P: Dataset | WeightedPointSet,
    S: WeightedPointSet,
    algorithm: Algorithm | str,
    eps: float,
    noise: NoiseLike,
    opt_estimate: float,
    k: int,
    seed: int = 0,
    alpha: float = 1.0,
    reference: Optional[CenterSet] = None,
) -> QualityReport:
    """r~_S, u_S and kappa_S = r~_S / u_S for a coreset built from noisy data."""
    n, d = P.n, P.d
    r_tilde = empirical_ratio(P, S, k, seed, reference)
    u = theoretical_bound(algorithm, eps, noise, n, d, k, opt_estimate, alpha)
    level = noise.level if isinstance(noise, NoiseSpec) else float(noise)
    report = QualityReport.build(r_tilde, u, algorithm, level, eps)
    logger.info("%s eps=%.3g level=%.3g: r~=%.4f u=%.4f kappa=%.4f", report.algorithm.value, eps, level,
                r_tilde, u, report.kappa)
    return report
