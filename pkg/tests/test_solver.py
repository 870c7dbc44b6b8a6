import numpy as np
import pytest

from core.cost import cost
from core.types import CenterSet, Dataset, WeightedPointSet
from solver import kmeans
from solver.kmeans import SolveConfig, SolverError, estimate_opt, kmeanspp_seed, lloyd, solve, weighted_median_1d
from synthetic.instances import gen_beta_grid, gen_separated_clusters, gen_two_point
from utils.validators import InvalidInputError


def test_two_point_optimum():
    centers, opt = solve(gen_two_point(100), SolveConfig(1))
    assert opt == pytest.approx(100.0, rel=1e-12)
    assert centers.centers[0, 0] == pytest.approx(0.0, abs=1e-12)


def test_beta_grid_optima():
    P = gen_beta_grid(400, 2.5)
    _, opt3 = solve(P, SolveConfig(3))
    _, opt2 = solve(P, SolveConfig(2))
    assert opt3 == pytest.approx(400.0, rel=1e-6)
    assert opt2 == pytest.approx(800.0, rel=1e-6)


def test_weighted_solve_matches_weighted_mean():
    S = WeightedPointSet([[0.0], [3.0]], [2.0, 1.0])
    centers, opt = solve(S, SolveConfig(1, restarts=2))
    assert centers.centers[0, 0] == pytest.approx(1.0)
    assert opt == pytest.approx(6.0)


def test_solve_is_deterministic_per_seed():
    P = gen_separated_clusters(3, 30, seed=1)
    a, ca = solve(P, SolveConfig(3, seed=4))
    b, cb = solve(P, SolveConfig(3, seed=4))
    assert ca == cb
    assert np.array_equal(a.centers, b.centers)


def test_solve_recovers_separated_blobs():
    P = gen_separated_clusters(4, 50, d=2, seed=3)
    centers, _ = solve(P, SolveConfig(4))
    xs = np.sort(centers.centers[:, 0])
    assert xs == pytest.approx([0.0, 20.0, 40.0, 60.0], abs=0.5)


def test_lloyd_cost_never_increases():
    gen = np.random.default_rng(0)
    P = Dataset(gen.normal(size=(300, 2)))
    trace = []
    init = kmeanspp_seed(P, 5, gen)
    _, final = lloyd(P, init, trace=trace)
    assert all(b <= a for a, b in zip(trace, trace[1:]))
    assert final == trace[-1]
    assert final <= cost(P, init)


def test_lloyd_zero_iterations_keeps_init():
    P = Dataset([[0.0], [1.0], [10.0]])
    init = CenterSet([[0.0], [10.0]])
    centers, c = lloyd(P, init, max_iter=0)
    assert np.array_equal(centers.centers, init.centers)
    assert c == 1.0


def test_too_many_centers_raises():
    P = Dataset([[0.0], [0.0], [1.0]])
    with pytest.raises(InvalidInputError):
        solve(P, SolveConfig(3))
    with pytest.raises(InvalidInputError):
        SolveConfig(0)


def test_zero_weight_points_do_not_count_as_distinct():
    S = WeightedPointSet([[0.0], [1.0], [2.0]], [1.0, 0.0, 1.0])
    with pytest.raises(InvalidInputError):
        solve(S, SolveConfig(3))


def test_estimate_opt_is_an_upper_bound():
    P = gen_separated_clusters(3, 40, seed=2)
    _, best = solve(P, SolveConfig(3))
    _, rough = estimate_opt(P, 3, 5)
    assert rough >= best * (1 - 1e-9)


def test_weighted_median_is_lower_median():
    P = Dataset([[10.0], [0.0], [2.0], [1.0]])
    assert weighted_median_1d(P).centers[0, 0] == 1.0
    S = WeightedPointSet([[0.0], [5.0]], [1.0, 3.0])
    assert weighted_median_1d(S).centers[0, 0] == 5.0
    with pytest.raises(InvalidInputError):
        weighted_median_1d(Dataset([[0.0, 1.0]]))


def test_empty_cluster_is_reseeded_at_the_farthest_point():
    # by weight·d² the reseed would land on -3; by distance alone it lands on 4
    S = WeightedPointSet([[-3.0], [4.0], [0.0]], [10.0, 1.0, 1.0])
    centers, _ = lloyd(S, CenterSet([[0.0], [100.0]]), max_iter=1)
    assert centers.centers[1, 0] == 4.0
    assert centers.centers[0, 0] == pytest.approx(-26.0 / 12.0)


def test_lloyd_cost_rise_raises(monkeypatch):
    original = kmeans._weighted_means

    def shifted(points, weights, labels, k):
        sums, mass = original(points, weights, labels, k)
        return sums + 50.0 * mass[:, None], mass

    monkeypatch.setattr(kmeans, "_weighted_means", shifted)
    with pytest.raises(SolverError):
        lloyd(Dataset([[0.0], [1.0], [10.0]]), CenterSet([[0.0], [10.0]]))


def test_weighted_solve_matches_replicated_points():
    P = gen_separated_clusters(3, 5, d=2, seed=6)
    reps = np.random.default_rng(6).integers(1, 4, size=P.n)
    S = WeightedPointSet(P.points, reps.astype(float))
    R = Dataset(np.repeat(P.points, reps, axis=0))
    cw, opt_w = solve(S, SolveConfig(3, seed=1))
    cr, opt_r = solve(R, SolveConfig(3, seed=2))
    assert opt_w == pytest.approx(opt_r, rel=1e-9)
    order_w = np.lexsort(cw.centers.T[::-1])
    order_r = np.lexsort(cr.centers.T[::-1])
    assert np.allclose(cw.centers[order_w], cr.centers[order_r])


@pytest.mark.parametrize(
    "P, k, opt",
    [(gen_beta_grid(400, 2.5), 3, 400.0), (gen_two_point(400), 1, 400.0)],
)
def test_estimate_opt_is_within_ten_percent_on_known_optima(P, k, opt):
    ratios = np.array([estimate_opt(P, k, seed)[1] / opt for seed in range(100)])
    assert np.all(ratios >= 1.0 - 1e-9)
    assert np.mean(ratios <= 1.1) >= 0.95
