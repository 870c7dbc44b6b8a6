import math

import numpy as np
import pytest

from core.cost import cost
from metrics.err import estimate_err
from noise.models import NoiseSpec
from noise.perturb import perturb
from noise.rng import SeededRng
from solver.kmeans import estimate_opt
from synthetic.instances import (
    beta_sites,
    gen_beta_grid,
    gen_lower_bound_instance,
    gen_outlier_median,
    gen_separated_clusters,
    gen_two_point,
    lower_bound_candidates,
)
from utils.validators import InvalidInputError


def test_two_point_layout():
    P = gen_two_point(6)
    assert P.points[:, 0].tolist() == [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0]
    with pytest.raises(InvalidInputError):
        gen_two_point(5)


def test_beta_grid_sites_and_grouping():
    sites = beta_sites(2.5)
    assert sites.tolist() == pytest.approx([-3.25 * math.sqrt(2), -1.25 * math.sqrt(2),
                                            1.25 * math.sqrt(2), 3.25 * math.sqrt(2)])
    P = gen_beta_grid(8, 2.5)
    assert P.points[:, 0].tolist() == pytest.approx(np.repeat(sites, 2).tolist())


def test_beta_grid_rejects_bad_parameters():
    with pytest.raises(InvalidInputError):
        gen_beta_grid(10, 2.5)
    with pytest.raises(InvalidInputError):
        gen_beta_grid(8, 1.5)


def test_outlier_median_pair():
    P, S = gen_outlier_median(10)
    assert P.points[-1, 0] == 1.0
    assert S.points[-1, 0] == pytest.approx(0.1)
    assert np.all(P.points[:-1] == 0.0) and np.all(S.points[:-1] == 0.0)
    assert S.total_weight == 10.0


def test_lower_bound_candidates_cost_exactly_opt():
    n = 6
    P = gen_lower_bound_instance(n)
    assert P.points.shape == (n, n)
    cands = lower_bound_candidates(P, 10, 0)
    assert cands.k == n - 1
    for C in cands:
        assert cost(P, C) == pytest.approx(1e4 * n**2, rel=1e-12)


def test_lower_bound_instance_err_exceeds_noise_floor():
    n, theta, seeds = 50, 0.1, 20
    P = gen_lower_bound_instance(n)
    passed = 0
    for seed in range(seeds):
        root = SeededRng(seed).child("lower-bound")
        P_hat, _ = perturb(P, NoiseSpec.model_i(theta), root.child("noise"))
        cands = lower_bound_candidates(P_hat, 50, root.stream("candidates"))
        _, opt = estimate_opt(P_hat, n - 1, root.stream("opt"))
        passed += estimate_err(P_hat, P, cands) >= 0.1 * theta * n * n / opt
    assert passed >= 0.8 * seeds


def test_lower_bound_needs_enough_points():
    with pytest.raises(InvalidInputError):
        gen_lower_bound_instance(3)


def test_separated_clusters_are_seeded_and_grouped():
    a = gen_separated_clusters(3, 10, d=2, spread=1.0, seed=4)
    b = gen_separated_clusters(3, 10, d=2, spread=1.0, seed=4)
    assert a.n == 30 and a.d == 2
    assert np.array_equal(a.points, b.points)
    means = [a.points[i * 10:(i + 1) * 10, 0].mean() for i in range(3)]
    assert means == pytest.approx([0.0, 20.0, 40.0], abs=1.5)


def test_zero_spread_gives_exact_sites():
    P = gen_separated_clusters(2, 3, d=1, spread=0.0)
    assert P.points[:, 0].tolist() == [0.0, 0.0, 0.0, 20.0, 20.0, 20.0]
