"""Invariant suites runnable from the command line (``main.py selftest``).

Each suite builds a small seeded instance, evaluates one property and
reports pass/fail with the measured numbers. The pytest suite covers the
same ground more thoroughly; these exist so an installed copy can check
itself without the test tree.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from core.cost import cost, mean, one_mean_cost_identity_check
from core.types import CenterSet, Dataset
from coreset.cn import build_cn
from coreset.cn_alpha import build_cn_alpha, cn_alpha_cap, uniform_sample_with_replacement
from metrics.checks import check_composition
from metrics.err import (
    CenterGrid,
    brute_force_err_1d,
    estimate_err,
    estimate_err_alpha,
    grid_candidates,
    sample_candidates,
)
from noise.models import NoiseSpec
from noise.perturb import noise_mass_trials, perturb, random_covariance
from noise.rng import SeededRng
from solver.kmeans import SolveConfig, solve
from synthetic.instances import gen_beta_grid, gen_outlier_median, gen_separated_clusters, gen_two_point

logger = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _one_mean_identity(seed: int) -> Tuple[bool, str]:
    gen = SeededRng(seed).stream("selftest", "identity")
    P = Dataset(gen.normal(size=(200, 3)))
    lhs, rhs = one_mean_cost_identity_check(P, gen.normal(size=3))
    return math.isclose(lhs, rhs, rel_tol=1e-9), f"lhs={lhs:.10g} rhs={rhs:.10g}"


def _two_point(seed: int) -> Tuple[bool, str]:
    P = gen_two_point(100)
    _, opt = solve(P, SolveConfig(1, seed=seed))
    return math.isclose(opt, 100.0, rel_tol=1e-9), f"OPT={opt:.6g} (expected 100)"


def _beta_grid(seed: int) -> Tuple[bool, str]:
    P = gen_beta_grid(400, 2.5)
    _, opt3 = solve(P, SolveConfig(3, seed=seed))
    _, opt2 = solve(P, SolveConfig(2, seed=seed))
    ok = abs(opt3 / 400 - 1.0) <= 0.02 and abs(opt2 / opt3 - 2.0) <= 0.1
    return ok, f"OPT(3)/n={opt3 / 400:.4f} OPT(2)/OPT(3)={opt2 / opt3:.4f}"


def _noise_mass(spec_for: Callable[[int, SeededRng], NoiseSpec]) -> Callable[[int], Tuple[bool, str]]:
    def suite(seed: int) -> Tuple[bool, str]:
        n, d, trials = 2000, 3, 100
        root = SeededRng(seed).child("selftest", "mass")
        spec = spec_for(d, root)
        masses = noise_mass_trials(spec, n, d, trials, root)
        expected = spec.expected_noise_mass(n, d)
        se = float(masses.std(ddof=1)) / math.sqrt(trials)
        observed = float(masses.mean())
        detail = f"{spec.label()}: mean mass={observed:.1f} expected={expected:.1f} (3 SE={3 * se:.1f})"
        return abs(observed - expected) <= 3.0 * se, detail

    return suite


def _center_movement(seed: int) -> Tuple[bool, str]:
    gen = SeededRng(seed).stream("selftest", "movement")
    cluster = Dataset(gen.normal(size=(60, 2)))
    m, trials = 12, 1000
    mu = mean(cluster)
    opt = cost(cluster, CenterSet(mu[None, :]))
    moves = [float(np.sum((mean(uniform_sample_with_replacement(cluster, m, gen)) - mu) ** 2)) for _ in range(trials)]
    expected = opt / (cluster.n * m)
    observed = float(np.mean(moves))
    return abs(observed / expected - 1.0) <= 0.2, f"mean shift={observed:.4g} OPT/(nm)={expected:.4g}"


def _noisy_center_movement(seed: int) -> Tuple[bool, str]:
    n, d, theta, trials = 200, 3, 0.2, 1000
    root = SeededRng(seed).child("selftest", "noisy-center")
    P = gen_separated_clusters(1, n, d=d, spread=1.0, seed=seed)
    mu = mean(P)
    spec = NoiseSpec.model_i(theta)
    moves = [float(np.sum((mean(perturb(P, spec, root.child(t))[0]) - mu) ** 2)) for t in range(trials)]
    limit = 10.0 * theta * d / n
    observed = float(np.mean(moves))
    return observed <= limit, f"mean shift={observed:.4g} limit={limit:.4g}"


def _err_below_grid_max(seed: int) -> Tuple[bool, str]:
    root = SeededRng(seed).child("selftest", "grid")
    worst = -math.inf
    for t in range(50):
        gen = root.stream(t)
        A = Dataset(gen.normal(size=(8, 1)))
        B = uniform_sample_with_replacement(A, 4, gen)
        k = 1 + t % 2
        grid = CenterGrid.covering(A, B, size=41)
        estimate = estimate_err(A, B, grid_candidates(grid, k, 30, gen))
        exact = brute_force_err_1d(A, B, k, 2.0, grid)
        worst = max(worst, estimate - exact)
    return worst <= 1e-9, f"max(estimate - grid max)={worst:.3g} over 50 instances"


def _cn_unbiased(seed: int) -> Tuple[bool, str]:
    P_hat = gen_separated_clusters(2, 15, d=2, seed=seed)
    C = CenterSet(np.array([[1.0, 1.0], [19.0, -1.0]]))
    target = cost(P_hat, C)
    root = SeededRng(seed).child("selftest", "cn")
    est = np.mean([cost(build_cn(P_hat, 0.9, 2, root.child(t)), C) for t in range(10_000)])
    return abs(est / target - 1.0) <= 0.01, f"mean cost(S)={est:.4g} cost(P_hat)={target:.4g}"


def _cn_alpha_size(seed: int) -> Tuple[bool, str]:
    P_hat = gen_separated_clusters(3, 150, d=2, spread=1.0, seed=seed)
    S, trace = build_cn_alpha(P_hat, 0.3, 0.0, 3, SeededRng(seed).child("selftest", "cna"))
    expected = 3 * cn_alpha_cap(0.3)
    weight_ok = math.isclose(S.total_weight, sum(c.n_filtered for c in trace.clusters), rel_tol=1e-9)
    return S.n == expected and weight_ok, f"|S|={S.n} (expected {expected}), total weight={S.total_weight:.6g}"


def _composition(seed: int) -> Tuple[bool, str]:
    root = SeededRng(seed).child("selftest", "composition")
    P = gen_separated_clusters(3, 15, d=2, seed=seed)
    P_hat, _ = perturb(P, NoiseSpec.model_ii(0.2), root.child("noise"))
    S = build_cn_alpha(P_hat, 0.3, 0.2, 3, root.child("build"))[0]
    report = check_composition(S, P_hat, P, sample_candidates(P_hat, 3, 200, root.stream("candidates")))
    return report.holds, f"worst slack={report.worst_slack:.3g} over {int(report.precondition.sum())} candidates"


def _outlier_median(seed: int) -> Tuple[bool, str]:
    n = 10
    P, S = gen_outlier_median(n)
    err1 = estimate_err_alpha(S, P, 1, 1.0, seed, z=1.0).value
    err = brute_force_err_1d(S, P, 1, 1.0, CenterGrid(-2.0, 2.0, 201))
    return err1 == 0.0 and err >= n - 1 - 1e-9, f"Err_1={err1:.3g} grid Err={err:.4g}"


SUITES: List[Tuple[str, Callable[[int], Tuple[bool, str]]]] = [
    ("one-mean cost identity", _one_mean_identity),
    ("two-point optimum", _two_point),
    ("beta-grid optimum", _beta_grid),
    ("model I noise mass", _noise_mass(lambda d, rng: NoiseSpec.model_i(0.3))),
    ("model II noise mass", _noise_mass(lambda d, rng: NoiseSpec.model_ii(0.5, "laplace"))),
    (
        "correlated noise mass",
        _noise_mass(lambda d, rng: NoiseSpec.correlated(0.4, random_covariance(d, rng.stream("covariance")))),
    ),
    ("CN unbiased cost", _cn_unbiased),
    ("coreset center movement", _center_movement),
    ("noisy center movement", _noisy_center_movement),
    ("sampled Err below grid Err", _err_below_grid_max),
    ("CN-alpha size and weight", _cn_alpha_size),
    ("composition inequality", _composition),
    ("outlier 1-median", _outlier_median),
]


def run_selftest(seed: int = 0, only: Optional[str] = None) -> List[SuiteResult]:
    results: List[SuiteResult] = []
    for name, suite in SUITES:
        if only and only not in name:
            continue
        try:
            passed, detail = suite(seed)
        except Exception as exc:  # a crashing suite is a failed suite
            logger.exception("selftest %s crashed", name)
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(SuiteResult(name, bool(passed), detail))
    return results
