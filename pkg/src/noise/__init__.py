"""Noise models and the perturbation that turns P into P-hat."""

from noise.models import NoiseFamily, NoiseModel, NoiseSpec, covariance_factor
from noise.perturb import BLOCK_SIZE, noise_mass_trials, perturb, random_covariance, sample_unit_noise
from noise.rng import SeededRng, as_rng

__all__ = [
    "BLOCK_SIZE",
    "NoiseFamily",
    "NoiseModel",
    "NoiseSpec",
    "SeededRng",
    "as_rng",
    "covariance_factor",
    "noise_mass_trials",
    "perturb",
    "random_covariance",
    "sample_unit_noise",
]
