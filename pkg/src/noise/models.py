"""Noise model descriptions (model I, model II, correlated Gaussian)."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from utils.validators import InvalidInputError, validate_nonnegative, validate_probability

# Eigenvalues in [-CLAMP_TOL * scale, 0) count as rounding noise and are set to 0.
CLAMP_TOL = 1e-12


class NoiseModel(str, Enum):
    MODEL_I = "I"
    MODEL_II = "II"
    CORRELATED = "correlated"


class NoiseFamily(str, Enum):
    GAUSSIAN = "gaussian"
    LAPLACE = "laplace"
    UNIFORM = "uniform"


def covariance_factor(covariance: np.ndarray) -> np.ndarray:
    """Return ``L`` with ``L @ L.T == covariance`` via a clamped eigendecomposition.

    Raises InvalidInputError for non-square, non-symmetric or indefinite input.
    """
    cov = np.asarray(covariance, dtype=np.float64)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise InvalidInputError(f"covariance: expected a square matrix, got shape {cov.shape}")
    if not np.all(np.isfinite(cov)):
        raise InvalidInputError("covariance: entries must be finite")
    if not np.allclose(cov, cov.T, rtol=1e-10, atol=1e-12):
        raise InvalidInputError("covariance: matrix is not symmetric")
    eigvals, eigvecs = np.linalg.eigh((cov + cov.T) / 2.0)
    scale = max(1.0, float(np.max(np.abs(eigvals)))) if eigvals.size else 1.0
    if eigvals.size and float(eigvals.min()) < -CLAMP_TOL * scale:
        raise InvalidInputError(
            f"covariance: not positive semidefinite (min eigenvalue {eigvals.min():.3e})"
        )
    eigvals = np.clip(eigvals, 0.0, None)
    return eigvecs * np.sqrt(eigvals)


@dataclass(frozen=True, eq=False)
class NoiseSpec:
    """Which noise model to apply and at what level.

    ``level`` is θ for model I and σ² for model II and the correlated model.
    ``family`` is ignored by the correlated model, which is always Gaussian.
    """

    model: NoiseModel
    level: float
    family: NoiseFamily = NoiseFamily.GAUSSIAN
    covariance: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        model = NoiseModel(self.model)
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "family", NoiseFamily(self.family))
        if model is NoiseModel.MODEL_I:
            object.__setattr__(self, "level", validate_probability(self.level, "theta"))
        else:
            object.__setattr__(self, "level", validate_nonnegative(self.level, "sigma2"))
        if model is NoiseModel.CORRELATED:
            if self.covariance is None:
                raise InvalidInputError("covariance: required for the correlated model")
            cov = np.array(self.covariance, dtype=np.float64, copy=True)
            covariance_factor(cov)
            cov.setflags(write=False)
            object.__setattr__(self, "covariance", cov)

    @classmethod
    def model_i(cls, theta: float, family: NoiseFamily | str = NoiseFamily.GAUSSIAN) -> "NoiseSpec":
        return cls(NoiseModel.MODEL_I, theta, NoiseFamily(family))

    @classmethod
    def model_ii(cls, sigma2: float, family: NoiseFamily | str = NoiseFamily.GAUSSIAN) -> "NoiseSpec":
        return cls(NoiseModel.MODEL_II, sigma2, NoiseFamily(family))

    @classmethod
    def correlated(cls, sigma2: float, covariance: np.ndarray) -> "NoiseSpec":
        return cls(NoiseModel.CORRELATED, sigma2, NoiseFamily.GAUSSIAN, covariance)

    @property
    def trace(self) -> Optional[float]:
        if self.covariance is None:
            return None
        return float(np.trace(self.covariance))

    def check_dimension(self, d: int) -> None:
        if self.covariance is not None and self.covariance.shape[0] != d:
            raise InvalidInputError(
                f"covariance: shape {self.covariance.shape} does not match d={d}"
            )

    def bound_level(self, d: int) -> float:
        """Per-coordinate level entering bound formulas and the CN-alpha radius.

        θ for model I, σ² for model II, σ²·trace(Σ)/d for the correlated model,
        so that ``level * n * d`` is the expected total noise mass in each case.
        """
        if self.model is NoiseModel.CORRELATED:
            self.check_dimension(d)
            return self.level * float(self.trace) / d
        return self.level

    def expected_noise_mass(self, n: int, d: int) -> float:
        """``E[sum_p ||xi_p||^2]``."""
        return self.bound_level(d) * n * d

    def label(self) -> str:
        if self.model is NoiseModel.MODEL_I:
            return f"model I theta={self.level:g} ({self.family.value})"
        if self.model is NoiseModel.MODEL_II:
            return f"model II sigma2={self.level:g} ({self.family.value})"
        return f"correlated sigma2={self.level:g} trace={self.trace:g}"
