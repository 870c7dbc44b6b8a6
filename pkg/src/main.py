"""
main.py
-------
Command-line entry point: build coresets of noisy data, run the experiment
grid and the beta sweep, check the clustering assumptions and run the
self-test suites.

Run:
$ python src/main.py bench --dataset data/adult.csv --schema data/adult.schema
$ python src/main.py sweep --out sweep.csv
$ python src/main.py selftest
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd
from dotenv import load_dotenv

# Load environment variables early so downstream imports (which read env) see them
load_dotenv()

from assumptions.stability import DEFAULT_TRIM, assumption_report
from bench.config import DEFAULT_EPS, DEFAULT_LEVELS, DEFAULT_TRIALS, ExperimentConfig, SweepConfig, normalise_format
from bench.runner import build_coreset, noise_spec, run_beta_sweep, run_grid
from bench.selftest import run_selftest
from coreset.cn import Algorithm, ConstructionError
from coreset.summary import coreset_summary
from data_processing.data_loader import DataLoadError, load_schema, resolve_dataset
from metrics.quality import quality_report
from noise.models import NoiseFamily, NoiseModel
from noise.perturb import perturb, random_covariance
from noise.rng import SeededRng
from reporting.summary_tables import (
    _format_table,
    _symbols,
    emit,
    emit_sweep,
    print_assumption_table,
    print_coreset_summary_table,
    print_experiment_table,
)
from solver.kmeans import SolveConfig, solve
from utils.validators import InvalidInputError

VERBOSE = os.getenv("VERBOSE", "0").lower() in {"1", "true", "yes"}

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3

logger = logging.getLogger("coreset")


class _Parser(argparse.ArgumentParser):
    """Argument errors exit with the invalid-config code instead of argparse's 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"❌ {self.prog}: {message}\n")


def _floats(text: str, label: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"{label}: expected comma-separated numbers, got {text!r}") from None


def _algorithms(text: str) -> List[Algorithm]:
    if text.lower() in {"both", "all"}:
        return [Algorithm.CN, Algorithm.CN_ALPHA]
    aliases = {"cn": Algorithm.CN, "cnalpha": Algorithm.CN_ALPHA, "cn_alpha": Algorithm.CN_ALPHA}
    out = []
    for name in (x.strip() for x in text.split(",") if x.strip()):
        if name.lower() not in aliases:
            raise InvalidInputError(f"alg: unknown algorithm {name!r} (CN, CNalpha or both)")
        out.append(aliases[name.lower()])
    return out


def _write_or_print(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"✅ Wrote {out}")
    else:
        sys.stdout.write(text)


def _load(args: argparse.Namespace):
    schema = load_schema(args.schema) if getattr(args, "schema", None) else None
    return resolve_dataset(args.dataset, schema, getattr(args, "subsample", None), args.seed)


# ────────────────────────────────────────────────────────────────────────────
# Subcommands
# ────────────────────────────────────────────────────────────────────────────
def cmd_bench(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        dataset=args.dataset,
        k=args.k,
        eps=tuple(_floats(args.eps, "eps")),
        noise_model=args.noise_model,
        family=args.family,
        levels=tuple(_floats(args.levels, "levels")),
        trials=args.trials,
        seed=args.seed,
        algorithms=tuple(_algorithms(args.alg)),
        alpha=args.alpha,
        output_format=args.format,
        schema=args.schema,
        subsample=args.subsample,
        radius_rule=args.radius_rule,
    )
    rows = run_grid(config)
    if args.out:
        print_experiment_table(rows)
    _write_or_print(emit(rows, config.output_format), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    fmt = normalise_format(args.format)
    config = SweepConfig(
        n=args.n,
        beta_start=args.beta_start,
        beta_stop=args.beta_stop,
        step=args.step,
        level=args.level,
        candidates=args.candidates,
        seed=args.seed,
    )
    _write_or_print(emit_sweep(run_beta_sweep(config), fmt), args.out)
    return EXIT_OK


def cmd_coreset(args: argparse.Namespace) -> int:
    P = _load(args)
    eps_values, algorithms = _floats(args.eps, "eps"), _algorithms(args.alg)
    if len(eps_values) != 1 or len(algorithms) != 1:
        raise InvalidInputError("coreset: give exactly one --eps and one --alg")
    eps, algorithm = eps_values[0], algorithms[0]
    root = SeededRng(args.seed)
    model = NoiseModel(args.noise_model)
    covariance = random_covariance(P.d, root.stream("covariance")) if model is NoiseModel.CORRELATED else None
    spec = noise_spec(model, args.level, args.family, covariance)

    P_hat, _ = perturb(P, spec, root.child("noise", 0, 0))
    S, trace = build_coreset(
        algorithm, P_hat, eps, spec, args.k, root.child("build"), alpha=args.alpha, radius_rule=args.radius_rule
    )
    print(f"✅ {algorithm.value} coreset of {spec.label()} data (n={P.n}, d={P.d})")
    print_coreset_summary_table(coreset_summary(S, trace))

    _, opt_hat = solve(P_hat, SolveConfig(args.k, seed=args.seed))
    report = quality_report(P, S, algorithm, eps, spec, opt_hat, args.k, seed=args.seed, alpha=args.alpha)
    print(f"r~={report.r_tilde:.4f}  u={report.u:.4f}  kappa={report.kappa:.4f}")

    if args.out:
        frame = pd.DataFrame(S.points, columns=[f"x{j}" for j in range(S.d)])
        frame["weight"] = S.weights
        frame.to_csv(args.out, index=False, lineterminator="\n")
        print(f"✅ Wrote {args.out}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    P_hat = _load(args)
    report = assumption_report(P_hat, args.k, args.alpha, args.level, args.seed, args.trim)
    print_assumption_table(args.dataset, report)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace) -> int:
    _, tick, cross = _symbols()
    results = run_selftest(args.seed, args.only)
    print(_format_table(["Suite", "Result", "Detail"], [[r.name, tick if r.passed else cross, r.detail] for r in results]))
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"❌ {len(failed)} suite(s) failed: {', '.join(failed)}")
        return EXIT_INTERNAL
    print(f"✅ {len(results)} suites passed")
    return EXIT_OK


# ────────────────────────────────────────────────────────────────────────────
# Parser
# ────────────────────────────────────────────────────────────────────────────
def _add_data_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", required=True, help="CSV path or synthetic:<name>:k=v,...")
    p.add_argument("--schema", help="schema file selecting continuous columns")
    p.add_argument("--subsample", type=int, help="uniform subsample size")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)


def _add_noise_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--noise-model", default=NoiseModel.MODEL_I.value, choices=[m.value for m in NoiseModel])
    p.add_argument("--family", default=NoiseFamily.GAUSSIAN.value, choices=[f.value for f in NoiseFamily])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--radius-rule", default="empirical", choices=["empirical", "theory"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coreset", description="Coresets for k-means on noisy data")
    parser.add_argument("-v", "--verbose", action="store_true", help="INFO-level logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bench = sub.add_parser("bench", help="run the (level, algorithm, eps) grid")
    _add_data_args(bench)
    _add_noise_args(bench)
    bench.add_argument("--eps", default=",".join(f"{e:g}" for e in DEFAULT_EPS))
    bench.add_argument("--levels", default=",".join(f"{v:g}" for v in DEFAULT_LEVELS))
    bench.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    bench.add_argument("--alg", default="both")
    bench.add_argument("--format", default="markdown")
    bench.add_argument("--out")
    bench.set_defaults(func=cmd_bench)

    sweep = sub.add_parser("sweep", help="Err and Err_1 across the beta grid")
    sweep.add_argument("--n", type=int, default=10_000)
    sweep.add_argument("--beta-start", type=float, default=2.0)
    sweep.add_argument("--beta-stop", type=float, default=3.0)
    sweep.add_argument("--step", type=float, default=0.05)
    sweep.add_argument("--level", type=float, default=1.0)
    sweep.add_argument("--candidates", type=int, default=500)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--format", default="csv")
    sweep.add_argument("--out")
    sweep.set_defaults(func=cmd_sweep)

    coreset = sub.add_parser("coreset", help="build one coreset and summarise it")
    _add_data_args(coreset)
    _add_noise_args(coreset)
    coreset.add_argument("--eps", default="0.2")
    coreset.add_argument("--level", type=float, default=0.01)
    coreset.add_argument("--alg", default="CNalpha")
    coreset.add_argument("--out", help="write the weighted coreset as CSV")
    coreset.set_defaults(func=cmd_coreset)

    check = sub.add_parser("check", help="cost-stability and outlier diagnostics")
    _add_data_args(check)
    check.add_argument("--alpha", type=float, default=1.01)
    check.add_argument("--level", type=float, default=0.0)
    check.add_argument("--trim", type=float, default=DEFAULT_TRIM)
    check.set_defaults(func=cmd_check)

    selftest = sub.add_parser("selftest", help="run the invariant suites")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--only", help="run suites whose name contains this text")
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if (args.verbose or VERBOSE) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"❌ Invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DataLoadError as exc:
        print(f"❌ Data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConstructionError as exc:
        print(f"❌ Coreset construction failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        logger.exception("internal failure")
        print(f"❌ Internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
