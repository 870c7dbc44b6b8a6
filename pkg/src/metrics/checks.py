"""Checkable forms of the inequalities the coreset guarantees rest on.

Each check returns a report record rather than raising: a violation signals
estimator slack or a broken precondition, not a programming error.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from core.types import Dataset, PowerZ, WeightedPointSet
from metrics.err import (
    CandidateCenters,
    alpha_candidates,
    candidate_costs,
    estimate_err,
    estimate_err_alpha,
)
from noise.rng import SeededRng
from solver.kmeans import SolveConfig, solve
from utils.validators import InvalidInputError, validate_alpha

logger = logging.getLogger(__name__)

# relative slack allowed for floating-point rounding
ROUNDING_TOL = 1e-12

MergeInstance = Tuple[
    Dataset | WeightedPointSet, Dataset | WeightedPointSet, Dataset | WeightedPointSet, Dataset | WeightedPointSet
]


def _weighted(data: Dataset | WeightedPointSet) -> WeightedPointSet:
    return data.to_weighted() if isinstance(data, Dataset) else data


# ────────────────────────────────────────────────────────────────────────────
# 1. Composition
# ────────────────────────────────────────────────────────────────────────────
@dataclass
class CompositionReport:
    err: np.ndarray          # Err(S, P) per candidate
    eps: np.ndarray          # Err(S, P_hat) per candidate
    eps_prime: np.ndarray    # Err(P_hat, P) per candidate
    slack: np.ndarray        # eps + 2 eps' - err
    precondition: np.ndarray  # eps < 1
    holds: bool
    worst_slack: float
    violations: List[int]
    aggregate_lhs: float
    aggregate_rhs: float

    @property
    def evaluated(self) -> int:
        return int(np.sum(~np.isnan(self.slack)))


def check_composition(
    S: Dataset | WeightedPointSet,
    P_hat: Dataset | WeightedPointSet,
    P: Dataset | WeightedPointSet,
    candidates: CandidateCenters,
    z: PowerZ = 2.0,
) -> CompositionReport:
    """Per candidate: |cost(P,C) - cost(S,C)| <= (eps + 2 eps')·cost(S,C).

    eps and eps' are that candidate's own Err(S, P_hat) and Err(P_hat, P).
    The inequality is exact arithmetic whenever eps < 1; candidates with zero
    cost on S or P_hat are skipped (NaN rows).
    """
    cs = candidate_costs(S, candidates, z)
    ch = candidate_costs(P_hat, candidates, z)
    cp = candidate_costs(P, candidates, z)

    n = len(candidates)
    err, eps, eps_p = (np.full(n, np.nan) for _ in range(3))
    ok = (cs > 0) & (ch > 0)
    err[ok] = np.abs(cp[ok] - cs[ok]) / cs[ok]
    eps[ok] = np.abs(cs[ok] - ch[ok]) / cs[ok]
    eps_p[ok] = np.abs(ch[ok] - cp[ok]) / ch[ok]
    slack = eps + 2.0 * eps_p - err

    pre = ok & (eps < 1.0)
    tol = ROUNDING_TOL * (1.0 + np.nan_to_num(err))
    bad = np.flatnonzero(pre & (slack < -tol))
    worst = float(np.min(slack[pre])) if np.any(pre) else float("nan")
    lhs = float(np.max(err[pre])) if np.any(pre) else float("nan")
    rhs = float(np.max(eps[pre]) + 2.0 * np.max(eps_p[pre])) if np.any(pre) else float("nan")
    return CompositionReport(
        err=err,
        eps=eps,
        eps_prime=eps_p,
        slack=slack,
        precondition=pre,
        holds=bad.size == 0,
        worst_slack=worst,
        violations=bad.tolist(),
        aggregate_lhs=lhs,
        aggregate_rhs=rhs,
    )


# ────────────────────────────────────────────────────────────────────────────
# 2. Err -> approximation ratio
# ────────────────────────────────────────────────────────────────────────────
@dataclass
class ErrToRReport:
    status: str
    err_hat: float
    bound: float
    evaluated: int
    worst_ratio: float
    violations: List[int] = field(default_factory=list)


def check_err_to_r(
    P: Dataset | WeightedPointSet,
    S: Dataset | WeightedPointSet,
    candidates: CandidateCenters,
    alpha: float,
    seed: int = 0,
) -> ErrToRReport:
    """r_P(C) <= (1 + Err)^2 · alpha for every candidate with r_S(C) <= alpha.

    The solution of S is prepended to the candidate list so at least one
    alpha-approximate candidate is always evaluated; Err is estimated on the
    same list. Index 0 of ``violations`` refers to that solution.
    """
    alpha = validate_alpha(alpha)
    k = candidates.k
    cfg = SolveConfig(k, seed=seed)
    c_s, opt_s = solve(S, cfg)
    _, opt_p = solve(P, cfg)
    if opt_s <= 0 or opt_p <= 0:
        return ErrToRReport("degenerate", float("nan"), float("nan"), 0, float("nan"))

    pool = CandidateCenters(c_s.centers[None, :, :]).extend(candidates)
    err_hat = estimate_err(S, P, pool)
    bound = (1.0 + err_hat) ** 2 * alpha

    r_s = candidate_costs(S, pool) / opt_s
    idx = np.flatnonzero(r_s <= alpha)
    r_p = candidate_costs(P, CandidateCenters(pool.centers[idx])) / opt_p
    over = idx[r_p > bound * (1.0 + ROUNDING_TOL)]
    if over.size:
        logger.warning("err->r: %d alpha-approximate candidates exceed the bound", over.size)
    return ErrToRReport(
        status="pass" if over.size == 0 else "violations",
        err_hat=err_hat,
        bound=bound,
        evaluated=int(idx.size),
        worst_ratio=float(r_p.max()),
        violations=over.tolist(),
    )


# ────────────────────────────────────────────────────────────────────────────
# 3. Weak mergeability
# ────────────────────────────────────────────────────────────────────────────
@dataclass
class MergeReport:
    status: str  # pass | fail | degenerate | precondition-unverified
    kappa: float = float("nan")
    tau: float = float("nan")
    eps: float = float("nan")
    merged_alpha: float = float("nan")
    lhs: float = float("nan")
    rhs: float = float("nan")
    err_parts: Tuple[float, float] = (float("nan"), float("nan"))
    inclusion_checked: int = 0
    inclusion_failures: int = 0

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def _inclusion_failures(
    src: WeightedPointSet,
    other: WeightedPointSet,
    k: int,
    alpha: float,
    alpha_prime: float,
    seed: int,
    candidates: int,
    gen,
) -> Tuple[int, int]:
    """Spot-check that alpha'-approximate solutions of ``src`` are alpha-approximate on ``other``."""
    cfg = SolveConfig(k, seed=seed)
    c_src, opt_src = solve(src, cfg)
    _, opt_other = solve(other, cfg)
    pool = CandidateCenters(c_src.centers[None, :, :]).extend(alpha_candidates(src, c_src, candidates, gen))
    r_src = candidate_costs(src, pool) / opt_src
    inside = np.flatnonzero(r_src <= alpha_prime)
    if inside.size == 0:
        return 0, 0
    r_other = candidate_costs(other, CandidateCenters(pool.centers[inside])) / opt_other
    return int(inside.size), int(np.sum(r_other > alpha * (1.0 + ROUNDING_TOL)))


def check_merge_bound(
    S1: Dataset | WeightedPointSet,
    P1: Dataset | WeightedPointSet,
    S2: Dataset | WeightedPointSet,
    P2: Dataset | WeightedPointSet,
    k: int,
    alpha: float,
    alpha_prime: float,
    seed: int = 0,
    eps: float = 0.1,
    candidates: int = 50,
) -> MergeReport:
    """Check Err_{1+(alpha-1)kappa}(S1 ∪ S2, P1 ∪ P2) < alpha'·tau·(1+eps) - 1.

    kappa = min(OPT_S1, OPT_S2)/OPT_{S1∪S2}; tau is the larger of the two
    ratios between OPT_S1/OPT_P1 and OPT_S2/OPT_P2. Preconditions checked
    first: Err_alpha(S_l, P_l) <= eps, and alpha'-approximate solutions of
    each S_l stay alpha-approximate on the other.
    """
    alpha = validate_alpha(alpha)
    alpha_prime = validate_alpha(alpha_prime)
    if alpha_prime > alpha:
        raise InvalidInputError(f"alpha_prime: must be <= alpha ({alpha}), got {alpha_prime}")
    S1, P1, S2, P2 = (_weighted(x) for x in (S1, P1, S2, P2))
    S12, P12 = S1.concat(S2), P1.concat(P2)

    cfg = SolveConfig(k, seed=seed)
    opt = {name: solve(data, cfg)[1] for name, data in (("S1", S1), ("S2", S2), ("S12", S12), ("P1", P1), ("P2", P2))}
    if min(opt.values()) <= 0:
        return MergeReport("degenerate")

    kappa = min(opt["S1"], opt["S2"]) / opt["S12"]
    a, b = opt["S1"] / opt["P1"], opt["S2"] / opt["P2"]
    tau = max(a / b, b / a)
    report = MergeReport("pass", kappa=kappa, tau=tau, eps=eps)

    e1 = estimate_err_alpha(S1, P1, k, alpha, seed).value
    e2 = estimate_err_alpha(S2, P2, k, alpha, seed).value
    report.err_parts = (e1, e2)
    gen = SeededRng(seed).stream("merge_inclusion")
    checked = failures = 0
    for src, other in ((S1, S2), (S2, S1)):
        c, f = _inclusion_failures(src, other, k, alpha, alpha_prime, seed, candidates, gen)
        checked += c
        failures += f
    report.inclusion_checked, report.inclusion_failures = checked, failures
    if max(e1, e2) > eps or failures:
        report.status = "precondition-unverified"
        return report

    report.merged_alpha = 1.0 + (alpha - 1.0) * kappa
    report.lhs = estimate_err_alpha(S12, P12, k, report.merged_alpha, seed).value
    report.rhs = alpha_prime * tau * (1.0 + eps) - 1.0
    report.status = "pass" if report.lhs < report.rhs else "fail"
    return report


def merge_pass_rate(
    make_instance: Callable[[int], MergeInstance],
    seeds: Iterable[int],
    k: int,
    alpha: float,
    alpha_prime: float,
    eps: float = 0.1,
) -> Dict[str, int]:
    """Tally check_merge_bound statuses over instances built from ``seeds``."""
    tally: Counter = Counter()
    for seed in seeds:
        S1, P1, S2, P2 = make_instance(seed)
        tally[check_merge_bound(S1, P1, S2, P2, k, alpha, alpha_prime, seed=seed, eps=eps).status] += 1
    return dict(tally)
