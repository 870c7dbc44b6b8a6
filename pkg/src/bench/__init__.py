"""Experiment grid, beta sweep and self-test suites."""

from bench.config import (
    DEFAULT_EPS,
    DEFAULT_LEVELS,
    OUTPUT_FORMATS,
    ROW_COLUMNS,
    ExperimentConfig,
    ExperimentRow,
    SweepConfig,
    SweepPoint,
)
from bench.runner import build_coreset, load_experiment_data, noise_spec, run_beta_sweep, run_grid
from bench.selftest import SUITES, SuiteResult, run_selftest

__all__ = [
    "DEFAULT_EPS",
    "DEFAULT_LEVELS",
    "OUTPUT_FORMATS",
    "ROW_COLUMNS",
    "SUITES",
    "ExperimentConfig",
    "ExperimentRow",
    "SuiteResult",
    "SweepConfig",
    "SweepPoint",
    "build_coreset",
    "load_experiment_data",
    "noise_spec",
    "run_beta_sweep",
    "run_grid",
    "run_selftest",
]
