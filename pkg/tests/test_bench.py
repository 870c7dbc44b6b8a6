import numpy as np
import pytest

from bench import runner, selftest
from bench.config import ExperimentConfig, SweepConfig, normalise_format
from bench.runner import build_coreset, noise_spec, run_beta_sweep, run_grid, sweep_point
from bench.selftest import run_selftest
from coreset.cn import Algorithm, ConstructionError
from noise.models import NoiseModel
from noise.perturb import random_covariance
from noise.rng import SeededRng
from synthetic.instances import gen_separated_clusters
from utils.helpers import float_range
from utils.validators import InvalidInputError

BLOBS = "synthetic:blobs:k=3,per_cluster=40,d=2"


def _small_config(**overrides):
    params = dict(dataset=BLOBS, k=3, eps=(0.3,), levels=(0.0, 0.01), trials=2, seed=1)
    params.update(overrides)
    return ExperimentConfig(**params)


def test_config_normalises_and_validates():
    cfg = _small_config(output_format="md", algorithms=("CN",), noise_model="II")
    assert cfg.output_format == "markdown"
    assert cfg.algorithms == (Algorithm.CN,)
    assert cfg.noise_model is NoiseModel.MODEL_II
    for bad in (dict(eps=(1.2,)), dict(levels=()), dict(trials=0), dict(output_format="xml"), dict(alpha=0.9)):
        with pytest.raises(InvalidInputError):
            _small_config(**bad)


def test_format_aliases():
    assert normalise_format("JSON-Lines") == "jsonl"
    assert normalise_format("markdown-table") == "markdown"
    with pytest.raises(InvalidInputError):
        normalise_format("xlsx")


def test_sweep_config_validation():
    with pytest.raises(InvalidInputError):
        SweepConfig(step=0.0)
    with pytest.raises(InvalidInputError):
        SweepConfig(beta_start=3.0, beta_stop=2.0)


def test_noise_spec_dispatch():
    assert noise_spec(NoiseModel.MODEL_I, 0.1, "gaussian", None).model is NoiseModel.MODEL_I
    assert noise_spec(NoiseModel.MODEL_II, 0.1, "laplace", None).family.value == "laplace"
    cov = random_covariance(2, 0)
    assert noise_spec(NoiseModel.CORRELATED, 0.1, "gaussian", cov).trace == pytest.approx(2.0)


def test_build_coreset_dispatch():
    P_hat = gen_separated_clusters(3, 30, seed=0)
    spec = noise_spec(NoiseModel.MODEL_I, 0.0, "gaussian", None)
    S, trace = build_coreset(Algorithm.CN, P_hat, 0.5, spec, 3, SeededRng(0))
    assert trace is None and S.n > 0
    S, trace = build_coreset(Algorithm.CN_ALPHA, P_hat, 0.5, spec, 3, SeededRng(0), radius_rule="theory", alpha=1.5)
    assert trace.radius_rule == "theory"


def test_run_grid_rows_and_order():
    rows = run_grid(_small_config())
    assert [(r.level, r.algorithm) for r in rows] == [
        (0.0, "CN"), (0.0, "CNalpha"), (0.01, "CN"), (0.01, "CNalpha")
    ]
    for r in rows:
        assert r.error is None
        assert r.trials == 2
        assert r.size > 0
        assert r.u >= 1.0
        assert r.r_tilde > 0
        assert np.isfinite(r.kappa)


def test_run_grid_does_not_depend_on_thread_count(monkeypatch):
    monkeypatch.setenv("CORESET_THREADS", "1")
    serial = [r.as_record() for r in run_grid(_small_config(trials=1))]
    monkeypatch.setenv("CORESET_THREADS", "4")
    threaded = [r.as_record() for r in run_grid(_small_config(trials=1))]
    assert serial == threaded


def test_failed_cells_become_error_rows(monkeypatch):
    original = runner.build_coreset

    def flaky(algorithm, *args, **kwargs):
        if algorithm is Algorithm.CN_ALPHA:
            raise ConstructionError("cluster 0: radius filter removed every point", cluster=0)
        return original(algorithm, *args, **kwargs)

    monkeypatch.setattr(runner, "build_coreset", flaky)
    rows = run_grid(_small_config(levels=(0.0,), trials=1))
    by_alg = {r.algorithm: r for r in rows}
    assert by_alg["CN"].error is None
    assert by_alg["CNalpha"].trials == 0
    assert "radius filter" in by_alg["CNalpha"].error
    assert np.isnan(by_alg["CNalpha"].r_tilde)


def test_correlated_grid_runs():
    rows = run_grid(_small_config(noise_model="correlated", levels=(0.05,), trials=1))
    assert all(r.error is None for r in rows)


def test_beta_sweep_covers_the_range():
    cfg = SweepConfig(n=40, candidates=10)
    points = run_beta_sweep(cfg)
    assert [p.beta for p in points] == float_range(2.0, 3.0, 0.05)
    assert len(points) == 21
    for p in points:
        assert p.err_hat >= 0.0
        assert p.err1_hat >= -1e-9


@pytest.mark.slow
def test_full_beta_sweep_err_one_dominates_then_falls():
    points = run_beta_sweep(SweepConfig(n=10_000))
    at = {round(p.beta, 2): p for p in points}
    mid = at[2.5]
    assert 0.30 <= mid.err_hat <= 0.55
    assert 0.60 <= mid.err1_hat <= 0.90
    assert mid.err1_hat > mid.err_hat
    tail = [p for p in points if p.beta > 2.5]
    slope = np.polyfit([p.beta for p in tail], [p.err1_hat for p in tail], 1)[0]
    assert slope < 0.0
    assert at[3.0].err1_hat < 0.5 * mid.err1_hat


def test_sweep_point_is_reproducible():
    cfg = SweepConfig(n=40, candidates=10, seed=3)
    assert sweep_point(cfg, 2.5) == sweep_point(cfg, 2.5)


def test_selftest_subset_passes():
    results = run_selftest(only="two-point")
    assert [r.name for r in results] == ["two-point optimum"]
    assert results[0].passed
    assert run_selftest(only="no such suite") == []


@pytest.mark.parametrize(
    "name",
    [
        "one-mean",
        "outlier",
        "CN-alpha size",
        "model I noise",
        "model II noise",
        "correlated noise",
        "coreset center movement",
        "noisy center movement",
        "sampled Err",
    ],
)
def test_selftest_suites(name):
    (result,) = run_selftest(only=name)
    assert result.passed, result.detail


def test_crashing_suite_is_reported_as_failed(monkeypatch):
    def boom(seed):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(selftest, "SUITES", [("boom", boom)])
    (result,) = run_selftest()
    assert not result.passed
    assert "RuntimeError" in result.detail
