"""Monte-Carlo estimators of the Err and Err_alpha gaps between two point sets.

The sup over all center sets in Err is not computable; these functions return
lower bounds: a max over sampled candidates, over jittered near-optimal
solutions, or (for tiny 1-D instances) over an exhaustive center grid.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from core.cost import cost, fsum
from core.types import CenterSet, Dataset, PowerZ, WeightedPointSet, as_arrays, as_power
from noise.rng import SeededRng, as_rng
from solver.kmeans import DEFAULT_RESTARTS, SolveConfig, solve, weighted_median_1d
from utils.helpers import ordered_map
from utils.validators import InvalidInputError, validate_alpha, validate_count

logger = logging.getLogger(__name__)

DEFAULT_CANDIDATES = 500
DEFAULT_JITTER = 200
MAX_GRID = 501


@dataclass(frozen=True, eq=False)
class CandidateCenters:
    """``m`` center sets of equal size, stored as an ``(m, k, d)`` array."""

    centers: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.centers, dtype=np.float64, copy=True)
        if arr.ndim != 3 or arr.shape[0] == 0:
            raise InvalidInputError("candidates: expected a nonempty (m, k, d) array")
        arr.setflags(write=False)
        object.__setattr__(self, "centers", arr)

    @classmethod
    def from_sets(cls, sets: Sequence[CenterSet]) -> "CandidateCenters":
        if not sets:
            raise InvalidInputError("candidates: empty list")
        return cls(np.stack([c.centers for c in sets]))

    @property
    def k(self) -> int:
        return int(self.centers.shape[1])

    @property
    def d(self) -> int:
        return int(self.centers.shape[2])

    def __len__(self) -> int:
        return int(self.centers.shape[0])

    def __iter__(self) -> Iterator[CenterSet]:
        for c in self.centers:
            yield CenterSet(c)

    def __getitem__(self, i: int) -> CenterSet:
        return CenterSet(self.centers[i])

    def extend(self, other: "CandidateCenters") -> "CandidateCenters":
        return CandidateCenters(np.concatenate([self.centers, other.centers]))


def sample_candidates(
    data: Dataset | WeightedPointSet,
    k: int,
    count: int = DEFAULT_CANDIDATES,
    rng: np.random.Generator | SeededRng | int | None = None,
) -> CandidateCenters:
    """``count`` center sets drawn uniformly, per coordinate, from the bounding box."""
    validate_count(k, "k")
    validate_count(count, "count")
    points, _ = as_arrays(data)
    lo, hi = points.min(axis=0), points.max(axis=0)
    gen = as_rng(rng)
    return CandidateCenters(gen.uniform(lo, hi, size=(count, k, points.shape[1])))


def candidate_costs(
    data: Dataset | WeightedPointSet, candidates: CandidateCenters, z: PowerZ = 2.0
) -> np.ndarray:
    """cost(data, C) for every candidate, in candidate order."""
    return np.array(ordered_map(lambda c: cost(data, c, z), list(candidates)))


def per_candidate_err(
    A: Dataset | WeightedPointSet,
    B: Dataset | WeightedPointSet,
    candidates: CandidateCenters,
    z: PowerZ = 2.0,
) -> np.ndarray:
    """|cost(A,C) - cost(B,C)| / cost(A,C) per candidate; NaN where cost(A,C) = 0."""
    ca = candidate_costs(A, candidates, z)
    cb = candidate_costs(B, candidates, z)
    out = np.full(ca.shape, np.nan)
    ok = ca > 0
    out[ok] = np.abs(ca[ok] - cb[ok]) / ca[ok]
    return out


def estimate_err(
    A: Dataset | WeightedPointSet,
    B: Dataset | WeightedPointSet,
    candidates: CandidateCenters,
    z: PowerZ = 2.0,
) -> float:
    """Max over candidates of the relative cost gap, measured against ``A``."""
    errs = per_candidate_err(A, B, candidates, z)
    if np.all(np.isnan(errs)):
        raise InvalidInputError("estimate_err: every candidate has zero cost on A")
    return float(np.nanmax(errs))


# ────────────────────────────────────────────────────────────────────────────
# Err_alpha
# ────────────────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class ErrAlphaEstimate:
    value: float
    alpha: float
    retained: int
    fallback: bool

    def __float__(self) -> float:
        return self.value


def best_centers(
    data: Dataset | WeightedPointSet, k: int, z: PowerZ = 2.0, seed: int = 0, restarts: int = DEFAULT_RESTARTS
) -> CenterSet:
    """Best available solution for the given power.

    k-means via best-of-restarts; z = 1 only for one center on the line,
    where the weighted median is exact.
    """
    z = as_power(z)
    if z == 2.0:
        centers, _ = solve(data, SolveConfig(k, restarts=restarts, seed=seed))
        return centers
    points, _ = as_arrays(data)
    if z == 1.0 and k == 1 and points.shape[1] == 1:
        return weighted_median_1d(data)
    raise InvalidInputError(f"no solver for z={z}, k={k}, d={points.shape[1]}")


def alpha_candidates(
    data: Dataset | WeightedPointSet,
    base: CenterSet,
    count: int = DEFAULT_JITTER,
    rng: np.random.Generator | SeededRng | int | None = None,
) -> CandidateCenters:
    """Perturbations of ``base``: each swaps one center for a data point drawn by
    weight, or jitters all centers with Gaussian noise at a random fraction of
    the RMS radius, with equal probability.
    """
    validate_count(count, "count")
    gen = as_rng(rng)
    points, weights = as_arrays(data)
    total = float(weights.sum())
    spread = cost(data, base, 2.0) / total if total > 0 else 0.0
    scale = float(np.sqrt(spread)) if spread > 0 else float(np.ptp(points, axis=0).max() or 1.0) * 0.01
    probs = weights / total

    out = np.empty((count, base.k, base.d))
    for i in range(count):
        c = np.array(base.centers, copy=True)
        if gen.random() < 0.5:
            c[gen.integers(base.k)] = points[gen.choice(points.shape[0], p=probs)]
        else:
            c = c + gen.normal(0.0, (1.0 - gen.random()) * scale, size=c.shape)
        out[i] = c
    return CandidateCenters(out)


def _ratio(value: float, opt: float) -> float:
    if opt > 0:
        return value / opt
    return 1.0 if value == 0 else float("inf")


def estimate_err_alpha(
    first: Dataset | WeightedPointSet,
    P: Dataset | WeightedPointSet,
    k: int,
    alpha: float = 1.0,
    seed: int = 0,
    *,
    z: PowerZ = 2.0,
    jitter: int = DEFAULT_JITTER,
    restarts: int = DEFAULT_RESTARTS,
) -> ErrAlphaEstimate:
    """Lower-bound estimate of Err_alpha(first, P).

    alpha = 1: cost(P, C_first)/cost(P, C_P) - 1 with both solutions from the
    same solver and seed. alpha > 1: additionally the max of r_P(C)/r_first(C) - 1
    over jittered solutions with r_first(C) <= alpha. ``fallback`` is set when
    none of the jittered solutions qualified.
    """
    alpha = validate_alpha(alpha)
    c_first = best_centers(first, k, z, seed, restarts)
    c_star = best_centers(P, k, z, seed, restarts)
    opt_p = cost(P, c_star, z)
    value = _ratio(cost(P, c_first, z), opt_p) - 1.0
    if alpha == 1.0:
        return ErrAlphaEstimate(value, alpha, 0, False)

    opt_first = cost(first, c_first, z)
    cands = alpha_candidates(first, c_first, jitter, SeededRng(seed).stream("err_alpha"))
    r_first = np.array([_ratio(v, opt_first) for v in candidate_costs(first, cands, z)])
    keep = np.flatnonzero(r_first <= alpha)
    if keep.size == 0:
        logger.warning("Err_alpha: no jittered solution within alpha=%.4g; using the alpha=1 value", alpha)
        return ErrAlphaEstimate(value, alpha, 0, True)

    kept = CandidateCenters(cands.centers[keep])
    r_p = np.array([_ratio(v, opt_p) for v in candidate_costs(P, kept, z)])
    value = max(value, float(np.max(r_p / r_first[keep])) - 1.0)
    return ErrAlphaEstimate(value, alpha, int(keep.size), False)


# ────────────────────────────────────────────────────────────────────────────
# 1-D grid oracle
# ────────────────────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class CenterGrid:
    lo: float
    hi: float
    size: int

    @classmethod
    def covering(cls, *sets: Dataset | WeightedPointSet, size: int = 201) -> "CenterGrid":
        """Grid over [min - range, max + range] of all given sets."""
        pts = np.concatenate([as_arrays(s)[0][:, 0] for s in sets])
        lo, hi = float(pts.min()), float(pts.max())
        span = hi - lo if hi > lo else 1.0
        return cls(lo - span, hi + span, size)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.size)


def _grid_costs(data: Dataset | WeightedPointSet, nodes: np.ndarray, k: int, z: float) -> np.ndarray:
    points, weights = as_arrays(data)
    dist = np.abs(points[:, 0][:, None] - nodes[None, :]) ** z
    if k == 1:
        return np.array([fsum(weights * dist[:, j]) for j in range(nodes.size)])
    out = np.empty((nodes.size, nodes.size))
    for i in range(nodes.size):
        pair = np.minimum(dist[:, i][:, None], dist)
        out[i] = weights @ pair
    return out


def brute_force_err_1d(
    A: Dataset | WeightedPointSet,
    B: Dataset | WeightedPointSet,
    k: int,
    z: PowerZ,
    grid: CenterGrid | None = None,
) -> float:
    """Exact max of |cost(A,C) - cost(B,C)|/cost(A,C) over a 1-D center grid.

    For k = 2 the grid is the Cartesian product of nodes with itself.
    """
    z = as_power(z)
    for label, s in (("A", A), ("B", B)):
        if as_arrays(s)[0].shape[1] != 1:
            raise InvalidInputError(f"brute_force_err_1d: {label} must be one-dimensional")
    if k not in (1, 2):
        raise InvalidInputError(f"brute_force_err_1d: k must be 1 or 2, got {k}")
    grid = grid or CenterGrid.covering(A, B)
    if not 2 <= grid.size <= MAX_GRID:
        raise InvalidInputError(f"brute_force_err_1d: grid size must lie in [2, {MAX_GRID}], got {grid.size}")

    nodes = grid.nodes()
    ca = _grid_costs(A, nodes, k, z)
    cb = _grid_costs(B, nodes, k, z)
    ok = ca > 0
    if not np.any(ok):
        raise InvalidInputError("brute_force_err_1d: A has zero cost at every grid node")
    return float(np.max(np.abs(ca[ok] - cb[ok]) / ca[ok]))


def grid_candidates(grid: CenterGrid, k: int, count: int, rng) -> CandidateCenters:
    """Random center sets whose coordinates are grid nodes."""
    nodes = grid.nodes()
    picks = as_rng(rng).integers(0, nodes.size, size=(count, k))
    return CandidateCenters(nodes[picks][:, :, None])
