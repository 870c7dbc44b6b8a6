"""Experiment grid configuration and result rows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from coreset.cn import Algorithm
from noise.models import NoiseFamily, NoiseModel
from utils.validators import (
    InvalidInputError,
    validate_alpha,
    validate_count,
    validate_epsilon,
    validate_nonnegative,
)

DEFAULT_EPS = (0.1, 0.15, 0.2, 0.25, 0.3)
DEFAULT_LEVELS = (0.0, 0.01, 0.05, 0.25)
DEFAULT_TRIALS = 10
OUTPUT_FORMATS = ("csv", "jsonl", "markdown")
FORMAT_ALIASES = {
    "csv": "csv",
    "jsonl": "jsonl",
    "json-lines": "jsonl",
    "markdown": "markdown",
    "md": "markdown",
    "markdown-table": "markdown",
}

# column order shared by every output format
ROW_COLUMNS = ("algorithm", "eps", "level", "size", "r_tilde", "u", "kappa", "trials", "seed", "error")


def normalise_format(fmt: str) -> str:
    try:
        return FORMAT_ALIASES[fmt.lower()]
    except KeyError:
        raise InvalidInputError(f"format: unknown output format {fmt!r}") from None


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    k: int = 10
    eps: Tuple[float, ...] = DEFAULT_EPS
    noise_model: NoiseModel = NoiseModel.MODEL_I
    family: NoiseFamily = NoiseFamily.GAUSSIAN
    levels: Tuple[float, ...] = DEFAULT_LEVELS
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    algorithms: Tuple[Algorithm, ...] = (Algorithm.CN, Algorithm.CN_ALPHA)
    alpha: float = 1.0
    output_format: str = "markdown"
    schema: Optional[str] = None
    subsample: Optional[int] = None
    radius_rule: str = "empirical"

    def __post_init__(self) -> None:
        validate_count(self.k, "k")
        validate_count(self.trials, "trials")
        validate_alpha(self.alpha)
        if not self.eps:
            raise InvalidInputError("eps: at least one value is required")
        if not self.levels:
            raise InvalidInputError("levels: at least one value is required")
        if not self.algorithms:
            raise InvalidInputError("algorithms: at least one is required")
        object.__setattr__(self, "eps", tuple(validate_epsilon(e) for e in self.eps))
        object.__setattr__(self, "levels", tuple(validate_nonnegative(v, "level") for v in self.levels))
        object.__setattr__(self, "noise_model", NoiseModel(self.noise_model))
        object.__setattr__(self, "family", NoiseFamily(self.family))
        object.__setattr__(self, "algorithms", tuple(Algorithm(a) for a in self.algorithms))
        object.__setattr__(self, "output_format", normalise_format(self.output_format))
        if self.subsample is not None:
            validate_count(self.subsample, "subsample")


@dataclass
class ExperimentRow:
    """Means over the completed trials of one (level, algorithm, eps) cell."""

    algorithm: str
    eps: float
    level: float
    size: float = float("nan")
    r_tilde: float = float("nan")
    u: float = float("nan")
    kappa: float = float("nan")
    trials: int = 0
    seed: int = 0
    error: Optional[str] = None

    def as_record(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in ROW_COLUMNS}


@dataclass(frozen=True)
class SweepPoint:
    beta: float
    err_hat: float
    err1_hat: float


@dataclass
class SweepConfig:
    n: int = 10_000
    beta_start: float = 2.0
    beta_stop: float = 3.0
    step: float = 0.05
    level: float = 1.0
    candidates: int = 500
    seed: int = 0
    k: int = 3
    noise_model: NoiseModel = NoiseModel.MODEL_I

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise InvalidInputError(f"step: must be > 0, got {self.step}")
        if self.beta_stop < self.beta_start:
            raise InvalidInputError("beta range: stop must be >= start")
        validate_count(self.candidates, "candidates")
        validate_nonnegative(self.level, "level")
        self.noise_model = NoiseModel(self.noise_model)
