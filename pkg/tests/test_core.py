import threading

import numpy as np
import pytest

from core.cost import assign, cluster_costs, cost, mean, one_mean_cost_identity_check, point_costs
from core.types import CenterSet, Dataset, WeightedPointSet
from synthetic.instances import beta_sites, gen_beta_grid
from utils.helpers import float_range, floor_size, mean_or_nan, ordered_map
from utils.validators import InvalidInputError, validate_count, validate_epsilon


def test_cost_of_unit_and_weighted_points():
    P = Dataset([[0.0], [2.0]])
    C = CenterSet([[1.0]])
    assert cost(P, C) == 2.0
    S = WeightedPointSet([[0.0], [2.0]], [1.0, 3.0])
    assert cost(S, C) == 4.0


def test_cost_power_one_is_plain_distance():
    P = Dataset([[0.0, 0.0], [3.0, 4.0]])
    assert cost(P, CenterSet([[0.0, 0.0]]), z=1.0) == pytest.approx(5.0)
    assert cost(P, CenterSet([[0.0, 0.0]]), z=2.0) == pytest.approx(25.0)


def test_ties_go_to_lowest_center_index():
    P = Dataset([[0.0], [5.0]])
    C = CenterSet([[-1.0], [1.0], [5.0]])
    assert assign(P, C).tolist() == [0, 2]


def test_beta_grid_optimum_merges_the_two_leftmost_sites():
    P = gen_beta_grid(8, 2.5)
    sites = beta_sites(2.5)
    C = CenterSet([[(sites[0] + sites[1]) / 2.0], [sites[2]], [sites[3]]])
    assert assign(P, C).tolist() == [0, 0, 0, 0, 1, 1, 2, 2]
    assert cost(P, C) == pytest.approx(8.0, rel=1e-12)


def test_cluster_costs_add_up_to_cost():
    gen = np.random.default_rng(3)
    P = Dataset(gen.normal(size=(50, 2)))
    C = CenterSet(gen.normal(size=(4, 2)))
    assert float(cluster_costs(P, C).sum()) == pytest.approx(cost(P, C), rel=1e-12)
    assert float(point_costs(P, C).sum()) == pytest.approx(cost(P, C), rel=1e-12)


def test_one_mean_identity():
    gen = np.random.default_rng(7)
    P = Dataset(gen.normal(size=(100, 3)))
    lhs, rhs = one_mean_cost_identity_check(P, np.array([1.0, -2.0, 0.5]))
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_weighted_mean():
    S = WeightedPointSet([[0.0], [3.0]], [2.0, 1.0])
    assert mean(S).tolist() == pytest.approx([1.0])


def test_containers_are_read_only():
    raw = np.zeros((3, 2))
    P = Dataset(raw)
    raw[0, 0] = 9.0
    assert P.points[0, 0] == 0.0
    with pytest.raises(ValueError):
        P.points[0, 0] = 1.0


def test_one_dimensional_input_is_a_column():
    P = Dataset([1.0, 2.0, 3.0])
    assert (P.n, P.d) == (3, 1)


def test_rejects_bad_points_and_weights():
    with pytest.raises(InvalidInputError):
        Dataset([[np.nan, 1.0]])
    with pytest.raises(InvalidInputError):
        Dataset(np.zeros((0, 2)))
    with pytest.raises(InvalidInputError):
        WeightedPointSet([[0.0], [1.0]], [1.0, -1.0])
    with pytest.raises(InvalidInputError):
        WeightedPointSet([[0.0], [1.0]], [1.0])


def test_dimension_mismatch_raises():
    with pytest.raises(InvalidInputError):
        cost(Dataset([[0.0, 1.0]]), CenterSet([[0.0]]))


def test_empty_weighted_set_has_zero_cost():
    S = WeightedPointSet(np.zeros((0, 2)), [])
    assert cost(S, CenterSet([[0.0, 0.0]])) == 0.0


def test_concat_and_cluster_weight():
    a = WeightedPointSet([[0.0]], [2.0], source_cluster=[0])
    b = WeightedPointSet([[1.0]], [3.0])
    assert a.concat(b).total_weight == 5.0
    assert a.cluster_weight(0) == 2.0
    with pytest.raises(InvalidInputError):
        b.cluster_weight(0)


def test_validators():
    assert validate_epsilon(0.2) == 0.2
    for bad in (0.0, 1.0, -0.1):
        with pytest.raises(InvalidInputError):
            validate_epsilon(bad)
    with pytest.raises(InvalidInputError):
        validate_count(True, "k")
    with pytest.raises(InvalidInputError):
        validate_count(1, "k", minimum=2)


def test_size_rounding_and_ranges():
    assert floor_size(9 / 0.1 + 6 / 0.1**2) == 690
    betas = float_range(2.0, 3.0, 0.05)
    assert len(betas) == 21
    assert betas[0] == 2.0 and betas[-1] == 3.0
    assert np.isnan(mean_or_nan([]))


def test_ordered_map_keeps_order(monkeypatch):
    monkeypatch.setenv("CORESET_THREADS", "4")
    assert ordered_map(lambda x: x * x, range(20)) == [x * x for x in range(20)]


def test_nested_ordered_map_stays_in_the_outer_worker(monkeypatch):
    monkeypatch.setenv("CORESET_THREADS", "4")

    def outer(i):
        here = threading.get_ident()
        inner = ordered_map(lambda j: threading.get_ident(), range(8))
        return here, inner

    for here, inner in ordered_map(outer, range(4)):
        assert inner == [here] * 8
    # a top-level call after the pool closes still parallelises
    seen = ordered_map(lambda j: threading.get_ident(), range(8))
    assert threading.get_ident() not in seen
