"""Draw the observed dataset P-hat from the true dataset P."""
from __future__ import annotations

import logging
import math
from typing import Optional, Tuple

import numpy as np

from core.types import Dataset
from noise.models import NoiseFamily, NoiseModel, NoiseSpec, covariance_factor
from noise.rng import SeededRng, as_rng

logger = logging.getLogger(__name__)

# Points per random substream; part of the reproducibility contract.
BLOCK_SIZE = 4096

_LAPLACE_SCALE = 1.0 / math.sqrt(2.0)
_UNIFORM_HALF_WIDTH = math.sqrt(3.0)


def sample_unit_noise(
    family: NoiseFamily | str,
    rng: np.random.Generator | SeededRng | int | None,
    size: Optional[int | Tuple[int, ...]] = None,
):
    """Mean-0, variance-1 draws from the requested family.

    Gaussian N(0, 1), Laplace(0, 1/sqrt(2)) or Uniform[-sqrt(3), sqrt(3)].
    Returns a float when ``size`` is None, else an array.
    """
    gen = as_rng(rng)
    family = NoiseFamily(family)
    if family is NoiseFamily.GAUSSIAN:
        out = gen.standard_normal(size)
    elif family is NoiseFamily.LAPLACE:
        out = gen.laplace(0.0, _LAPLACE_SCALE, size)
    else:
        out = gen.uniform(-_UNIFORM_HALF_WIDTH, _UNIFORM_HALF_WIDTH, size)
    return float(out) if size is None else out


def _block_noise(spec: NoiseSpec, gen: np.random.Generator, m: int, d: int, factor) -> np.ndarray:
    if spec.model is NoiseModel.MODEL_I:
        hit = gen.random(m) < spec.level
        draws = sample_unit_noise(spec.family, gen, (m, d))
        return np.where(hit[:, None], draws, 0.0)
    if spec.model is NoiseModel.MODEL_II:
        return math.sqrt(spec.level) * sample_unit_noise(spec.family, gen, (m, d))
    return gen.standard_normal((m, d)) @ factor.T


def perturb(P: Dataset, spec: NoiseSpec, rng: SeededRng | int) -> Tuple[Dataset, np.ndarray]:
    """Return ``(P_hat, xi)`` with ``P_hat = P + xi`` row by row.

    Model I leaves each point untouched with probability 1 - θ and otherwise
    adds unit-variance noise to every coordinate; model II adds variance-σ²
    noise everywhere; the correlated model adds one N(0, σ²Σ) draw per point.
    Randomness comes from one substream per block of ``BLOCK_SIZE`` points.
    """
    if not isinstance(rng, SeededRng):
        rng = SeededRng(int(rng))
    spec.check_dimension(P.d)
    factor = None
    if spec.model is NoiseModel.CORRELATED:
        factor = covariance_factor(spec.level * spec.covariance)

    xi = np.zeros((P.n, P.d))
    for block, start in enumerate(range(0, P.n, BLOCK_SIZE)):
        stop = min(start + BLOCK_SIZE, P.n)
        gen = rng.stream("perturb", block)
        xi[start:stop] = _block_noise(spec, gen, stop - start, P.d, factor)

    logger.debug("perturb: %s, n=%d, noise mass %.4g", spec.label(), P.n, float(np.sum(xi * xi)))
    return Dataset(P.points + xi), xi


def random_covariance(d: int, rng: np.random.Generator | SeededRng | int | None) -> np.ndarray:
    """Random symmetric PSD matrix with ``trace == d``.

    A random orthogonal basis (QR of a Gaussian matrix, signs fixed so the
    basis is Haar distributed) with eigenvalues drawn from [0.1, 1].
    """
    gen = as_rng(rng)
    q, r = np.linalg.qr(gen.standard_normal((d, d)))
    q = q * np.sign(np.diag(r))
    eigvals = gen.uniform(0.1, 1.0, d)
    eigvals *= d / eigvals.sum()
    cov = (q * eigvals) @ q.T
    return (cov + cov.T) / 2.0


def noise_mass_trials(spec: NoiseSpec, n: int, d: int, trials: int, rng: SeededRng | int) -> np.ndarray:
    """Total noise mass sum_p ||xi_p||^2 of ``trials`` independent perturbations of n points in R^d."""
    if not isinstance(rng, SeededRng):
        rng = SeededRng(int(rng))
    zeros = Dataset(np.zeros((n, d)))
    masses = np.empty(trials)
    for t in range(trials):
        _, xi = perturb(zeros, spec, rng.child("mass", t))
        masses[t] = float(np.sum(xi * xi))
    return masses
