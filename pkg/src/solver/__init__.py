"""k-means solvers: seeding, Lloyd refinement, restarts and the ÕPT estimate."""

from solver.kmeans import (
    DEFAULT_MAX_ITER,
    DEFAULT_RESTARTS,
    DEFAULT_TOL,
    OPT_ESTIMATE_ITERS,
    SolveConfig,
    SolverError,
    estimate_opt,
    kmeanspp_seed,
    lloyd,
    solve,
    weighted_median_1d,
)

__all__ = [
    "DEFAULT_MAX_ITER",
    "DEFAULT_RESTARTS",
    "DEFAULT_TOL",
    "OPT_ESTIMATE_ITERS",
    "SolveConfig",
    "SolverError",
    "estimate_opt",
    "kmeanspp_seed",
    "lloyd",
    "solve",
    "weighted_median_1d",
]
