import numpy as np
import pytest

from core.types import Dataset
from noise.models import NoiseFamily, NoiseModel, NoiseSpec, covariance_factor
from noise.perturb import noise_mass_trials, perturb, random_covariance, sample_unit_noise
from noise.rng import SeededRng
from utils.validators import InvalidInputError


def _zeros(n=2000, d=3):
    return Dataset(np.zeros((n, d)))


def test_model_i_zero_level_leaves_data_untouched():
    P = Dataset(np.arange(12.0).reshape(6, 2))
    P_hat, xi = perturb(P, NoiseSpec.model_i(0.0), 1)
    assert np.array_equal(P_hat.points, P.points)
    assert not xi.any()


def test_model_i_hits_about_theta_of_the_points():
    n, theta = 100_000, 0.3
    _, xi = perturb(_zeros(n), NoiseSpec.model_i(theta), SeededRng(5))
    hit = np.any(xi != 0.0, axis=1).mean()
    assert abs(hit - theta) <= 4.0 * np.sqrt(theta * (1.0 - theta) / n)


_MASS_SPECS = [NoiseSpec.model_i(0.3, family) for family in NoiseFamily] + [
    NoiseSpec.model_ii(0.5),
    NoiseSpec.model_ii(0.5, "laplace"),
    NoiseSpec.correlated(0.4, random_covariance(3, 12)),
]


@pytest.mark.slow
@pytest.mark.parametrize("spec", _MASS_SPECS, ids=lambda s: s.label())
def test_noise_mass_matches_its_expectation(spec):
    n, d = 2000, 3
    masses = noise_mass_trials(spec, n, d, 100, SeededRng(0))
    se = masses.std(ddof=1) / np.sqrt(masses.size)
    assert abs(masses.mean() - spec.expected_noise_mass(n, d)) <= 3.0 * se


def test_unit_noise_has_unit_variance():
    for family in NoiseFamily:
        draws = sample_unit_noise(family, np.random.default_rng(11), 200_000)
        assert float(np.mean(draws)) == pytest.approx(0.0, abs=0.01)
        assert float(np.var(draws)) == pytest.approx(1.0, rel=0.03)
    assert isinstance(sample_unit_noise("gaussian", 1), float)


def test_perturb_is_reproducible_per_seed():
    P = _zeros(500)
    spec = NoiseSpec.model_ii(1.0)
    a, _ = perturb(P, spec, SeededRng(9).child("noise", 0))
    b, _ = perturb(P, spec, SeededRng(9).child("noise", 0))
    c, _ = perturb(P, spec, SeededRng(9).child("noise", 1))
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, c.points)


def test_perturb_prefix_does_not_depend_on_n():
    spec = NoiseSpec.model_ii(1.0)
    _, small = perturb(_zeros(100), spec, 4)
    _, large = perturb(_zeros(5000), spec, 4)
    assert np.array_equal(small, large[:100])


def test_correlated_noise_follows_covariance():
    d = 3
    cov = random_covariance(d, 1)
    spec = NoiseSpec.correlated(0.5, cov)
    _, xi = perturb(_zeros(40_000, d), spec, 8)
    assert np.allclose(np.cov(xi.T), 0.5 * cov, atol=0.03)
    assert spec.bound_level(d) == pytest.approx(0.5 * np.trace(cov) / d)


def test_random_covariance_is_psd_with_trace_d():
    cov = random_covariance(5, SeededRng(3))
    assert np.allclose(cov, cov.T)
    assert np.trace(cov) == pytest.approx(5.0)
    assert np.linalg.eigvalsh(cov).min() > 0


def test_covariance_factor_reconstructs_and_rejects():
    cov = np.array([[2.0, 0.5], [0.5, 1.0]])
    L = covariance_factor(cov)
    assert np.allclose(L @ L.T, cov)
    with pytest.raises(InvalidInputError):
        covariance_factor(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(InvalidInputError):
        covariance_factor(np.array([[1.0, 0.0], [0.0, -1.0]]))
    # a rank-deficient matrix is accepted
    covariance_factor(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        NoiseSpec.model_i(1.5)
    with pytest.raises(InvalidInputError):
        NoiseSpec.model_ii(-0.1)
    with pytest.raises(InvalidInputError):
        NoiseSpec(NoiseModel.CORRELATED, 1.0)
    spec = NoiseSpec.correlated(1.0, np.eye(2))
    with pytest.raises(InvalidInputError):
        perturb(_zeros(10, 3), spec, 0)


def test_bound_level_and_label():
    assert NoiseSpec.model_i(0.05).bound_level(7) == 0.05
    assert NoiseSpec.model_ii(0.2, "laplace").bound_level(7) == 0.2
    assert "model II" in NoiseSpec.model_ii(0.2).label()


def test_seeded_rng_key_paths():
    root = SeededRng(1)
    a = root.child("a").stream(2).random(3)
    b = root.stream("a", 2).random(3)
    assert np.array_equal(a, b)
    assert root.derive_seed("x") == SeededRng(1).derive_seed("x")
    assert root.derive_seed("x") != root.derive_seed("y")
    with pytest.raises(ValueError):
        root.child(-1)
