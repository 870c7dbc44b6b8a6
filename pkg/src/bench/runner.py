"""Seeded repeated-trial experiments over the (noise level, algorithm, eps) grid
and the beta-separation sweep."""
from __future__ import annotations

import logging
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from bench.config import ExperimentConfig, ExperimentRow, SweepConfig, SweepPoint
from core.types import CenterSet, Dataset
from coreset.cn import Algorithm, ConstructionError, build_cn
from coreset.cn_alpha import build_cn_alpha
from data_processing.data_loader import load_schema, resolve_dataset
from metrics.err import estimate_err, estimate_err_alpha, sample_candidates
from metrics.quality import QualityReport, quality_report
from noise.models import NoiseModel, NoiseSpec
from noise.perturb import perturb, random_covariance
from noise.rng import SeededRng
from solver.kmeans import DEFAULT_RESTARTS, SolveConfig, solve
from synthetic.instances import gen_beta_grid
from utils.helpers import float_range, mean_or_nan, ordered_map
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass
class TrialResult:
    level_idx: int
    trial: int
    # (algorithm, eps index) -> (size, report) or error text
    cells: Dict[Tuple[Algorithm, int], Tuple[int, QualityReport] | str]


def noise_spec(model: NoiseModel, level: float, family, covariance: Optional[np.ndarray]) -> NoiseSpec:
    if model is NoiseModel.MODEL_I:
        return NoiseSpec.model_i(level, family)
    if model is NoiseModel.MODEL_II:
        return NoiseSpec.model_ii(level, family)
    return NoiseSpec.correlated(level, covariance)


def load_experiment_data(config: ExperimentConfig) -> Dataset:
    schema = load_schema(config.schema) if config.schema else None
    return resolve_dataset(config.dataset, schema, config.subsample, config.seed)


def build_coreset(
    algorithm: Algorithm,
    P_hat: Dataset,
    eps: float,
    spec: NoiseSpec,
    k: int,
    rng: SeededRng,
    *,
    alpha: float = 1.0,
    radius_rule: str = "empirical",
):
    """Dispatch to CN or CN-alpha; the trace is None for CN."""
    if algorithm is Algorithm.CN:
        return build_cn(P_hat, eps, k, rng), None
    return build_cn_alpha(
        P_hat, eps, spec.bound_level(P_hat.d), k, rng, radius_rule=radius_rule, alpha=alpha
    )


def _run_trial(
    config: ExperimentConfig,
    P: Dataset,
    reference: CenterSet,
    spec: NoiseSpec,
    level_idx: int,
    trial: int,
) -> TrialResult:
    root = SeededRng(config.seed)
    # shared by every algorithm and eps of this (level, trial)
    P_hat, _ = perturb(P, spec, root.child("noise", level_idx, trial))
    opt_cfg = SolveConfig(config.k, restarts=DEFAULT_RESTARTS, seed=root.derive_seed("opt", level_idx, trial))
    _, opt_hat = solve(P_hat, opt_cfg)

    cells: Dict[Tuple[Algorithm, int], Tuple[int, QualityReport] | str] = {}
    for algorithm in config.algorithms:
        for e_idx, eps in enumerate(config.eps):
            build_rng = root.child("build", level_idx, algorithm.value, e_idx, trial)
            try:
                S, _ = build_coreset(
                    algorithm, P_hat, eps, spec, config.k, build_rng,
                    alpha=config.alpha, radius_rule=config.radius_rule,
                )
                report = quality_report(
                    P, S, algorithm, eps, spec, opt_hat, config.k,
                    seed=root.derive_seed("solve", level_idx, trial),
                    alpha=config.alpha, reference=reference,
                )
                cells[(algorithm, e_idx)] = (S.n, report)
            except (ConstructionError, InvalidInputError) as exc:
                logger.warning("trial %d, %s eps=%g level=%g failed: %s", trial, algorithm.value, eps, spec.level, exc)
                cells[(algorithm, e_idx)] = str(exc)
    return TrialResult(level_idx, trial, cells)


def run_grid(config: ExperimentConfig, data: Optional[Dataset] = None) -> List[ExperimentRow]:
    """Average size, r~, u and kappa per (level, algorithm, eps) cell over the trials.

    Rows come out ordered by level, then algorithm, then eps. A cell whose
    every trial failed yields a row carrying the first error message.
    """
    P = data if data is not None else load_experiment_data(config)
    root = SeededRng(config.seed)
    covariance = None
    if config.noise_model is NoiseModel.CORRELATED:
        covariance = random_covariance(P.d, root.stream("covariance"))
    specs = [noise_spec(config.noise_model, lvl, config.family, covariance) for lvl in config.levels]

    reference, _ = solve(P, SolveConfig(config.k, restarts=DEFAULT_RESTARTS, seed=root.derive_seed("reference")))
    units = [(li, t) for li in range(len(specs)) for t in range(config.trials)]
    cells = len(config.algorithms) * len(config.eps)
    print(f"🔄 Running {len(units)} noisy trials x {cells} coresets (n={P.n}, d={P.d})", file=sys.stderr)
    results = ordered_map(lambda u: _run_trial(config, P, reference, specs[u[0]], u[0], u[1]), units)

    rows: List[ExperimentRow] = []
    for li, spec in enumerate(specs):
        per_level = [r for r in results if r.level_idx == li]
        for algorithm in config.algorithms:
            for e_idx, eps in enumerate(config.eps):
                outcomes = [r.cells[(algorithm, e_idx)] for r in per_level]
                done = [o for o in outcomes if not isinstance(o, str)]
                row = ExperimentRow(algorithm.value, eps, spec.level, trials=len(done), seed=config.seed)
                if not done:
                    row.error = next(o for o in outcomes if isinstance(o, str))
                else:
                    row.size = mean_or_nan(size for size, _ in done)
                    row.r_tilde = mean_or_nan(rep.r_tilde for _, rep in done)
                    row.u = mean_or_nan(rep.u for _, rep in done)
                    row.kappa = mean_or_nan(rep.kappa for _, rep in done)
                rows.append(row)
    failed = sum(1 for r in rows if r.error)
    if failed:
        print(f"⚠️ {failed} of {len(rows)} cells failed every trial", file=sys.stderr)
    else:
        print(f"✅ {len(rows)} cells completed", file=sys.stderr)
    return rows


def sweep_point(config: SweepConfig, beta: float) -> SweepPoint:
    P = gen_beta_grid(config.n, beta)
    root = SeededRng(config.seed)
    spec = NoiseSpec(config.noise_model, config.level)
    # same noise substream at every beta
    P_hat, _ = perturb(P, spec, root.child("sweep_noise"))
    candidates = sample_candidates(P_hat, config.k, config.candidates, root.stream("sweep_candidates"))
    err_hat = estimate_err(P_hat, P, candidates)
    err1_hat = estimate_err_alpha(P_hat, P, config.k, 1.0, config.seed).value
    return SweepPoint(beta, err_hat, err1_hat)


def run_beta_sweep(config: SweepConfig) -> List[SweepPoint]:
    """(beta, Err-hat, Err_1-hat) over the inclusive beta range."""
    betas = float_range(config.beta_start, config.beta_stop, config.step)
    print(f"🔄 Sweeping {len(betas)} beta values (n={config.n}, level={config.level:g})", file=sys.stderr)
    return ordered_map(lambda b: sweep_point(config, b), betas)
