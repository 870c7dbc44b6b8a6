import io

import pandas as pd
import pytest

import main as cli

BLOBS = "synthetic:blobs:k=3,per_cluster=20"


def test_selftest_command(capsys):
    assert cli.main(["selftest", "--only", "two-point"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "two-point optimum" in out
    assert "1 suites passed" in out


def test_failed_selftest_exits_internal(monkeypatch):
    from bench import selftest

    monkeypatch.setattr(selftest, "SUITES", [("always fails", lambda seed: (False, "nope"))])
    assert cli.main(["selftest"]) == cli.EXIT_INTERNAL


def test_bench_writes_requested_format(tmp_path):
    out = tmp_path / "grid.csv"
    code = cli.main([
        "bench", "--dataset", BLOBS, "--k", "3", "--eps", "0.3", "--levels", "0,0.01",
        "--trials", "1", "--alg", "CNalpha", "--format", "csv", "--out", str(out),
    ])
    assert code == cli.EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns)[:3] == ["algorithm", "eps", "level"]
    assert frame["level"].tolist() == [0.0, 0.01]
    assert set(frame["algorithm"]) == {"CNalpha"}


def test_bench_csv_on_stdout_is_clean(capsys):
    code = cli.main([
        "bench", "--dataset", BLOBS, "--k", "3", "--eps", "0.3", "--levels", "0",
        "--trials", "1", "--alg", "CN", "--format", "csv",
    ])
    assert code == cli.EXIT_OK
    captured = capsys.readouterr()
    frame = pd.read_csv(io.StringIO(captured.out))
    assert list(frame.columns)[:3] == ["algorithm", "eps", "level"]
    assert frame["algorithm"].tolist() == ["CN"]
    assert "cells completed" in captured.err


def test_bench_invalid_eps_exits_one(capsys):
    assert cli.main(["bench", "--dataset", BLOBS, "--k", "3", "--eps", "1.5"]) == cli.EXIT_INVALID
    assert "Invalid input" in capsys.readouterr().err


def test_bench_unknown_algorithm_exits_one():
    assert cli.main(["bench", "--dataset", BLOBS, "--k", "3", "--alg", "kmedoids"]) == cli.EXIT_INVALID


def test_missing_dataset_exits_two(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    assert cli.main(["bench", "--dataset", str(missing), "--k", "3"]) == cli.EXIT_DATA
    assert "Data error" in capsys.readouterr().err


def test_argument_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        cli.main(["nosuch"])
    assert exc.value.code == cli.EXIT_INVALID
    with pytest.raises(SystemExit) as exc:
        cli.main(["bench", "--dataset", BLOBS, "--trials", "many"])
    assert exc.value.code == cli.EXIT_INVALID


def test_coreset_command_writes_weighted_points(tmp_path, capsys):
    out = tmp_path / "coreset.csv"
    code = cli.main([
        "coreset", "--dataset", BLOBS, "--k", "3", "--eps", "0.3", "--alg", "CNalpha",
        "--level", "0.01", "--out", str(out),
    ])
    assert code == cli.EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["x0", "x1", "weight"]
    assert frame["weight"].sum() <= 60.0 + 1e-9
    assert "kappa=" in capsys.readouterr().out


def test_coreset_command_needs_single_eps():
    code = cli.main(["coreset", "--dataset", BLOBS, "--k", "3", "--eps", "0.2,0.3"])
    assert code == cli.EXIT_INVALID


def test_sweep_command(tmp_path):
    out = tmp_path / "sweep.csv"
    code = cli.main([
        "sweep", "--n", "40", "--candidates", "5", "--beta-stop", "2.1", "--out", str(out),
    ])
    assert code == cli.EXIT_OK
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["beta", "err_hat", "err1_hat"]
    assert frame["beta"].tolist() == pytest.approx([2.0, 2.05, 2.1])


def test_sweep_rejects_unknown_format():
    assert cli.main(["sweep", "--n", "40", "--format", "xml"]) == cli.EXIT_INVALID


def test_check_command(capsys, monkeypatch):
    monkeypatch.delenv("ASCII_SYMBOLS", raising=False)
    code = cli.main(["check", "--dataset", BLOBS, "--k", "3"])
    assert code == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "gamma" in out and BLOBS in out


def test_construction_failure_exits_internal(monkeypatch):
    from coreset.cn import ConstructionError

    def fail(*args, **kwargs):
        raise ConstructionError("cluster 0: radius filter removed every point", cluster=0)

    monkeypatch.setattr(cli, "build_coreset", fail)
    assert cli.main(["coreset", "--dataset", BLOBS, "--k", "3", "--eps", "0.3"]) == cli.EXIT_INTERNAL
