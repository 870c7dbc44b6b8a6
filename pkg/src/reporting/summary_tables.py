"""Experiment records as CSV / JSON lines / markdown, plus console tables."""
from __future__ import annotations

import io
import json
import math
import os
from typing import Any, Iterable, List, Mapping, Optional, Sequence, TextIO

import pandas as pd

from assumptions.stability import AssumptionReport
from bench.config import ROW_COLUMNS, ExperimentRow, SweepPoint, normalise_format
from coreset.summary import CoresetSummary
from utils.helpers import json_default
from utils.validators import InvalidInputError

SWEEP_COLUMNS = ("beta", "err_hat", "err1_hat")
MARKDOWN_DECIMALS = 3


def _format_table(headers: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    """Plain ``|``/``-`` table; columns holding only numbers are right-aligned."""
    rows_str = [[str(c) for c in row] for row in rows]
    headers_str = [str(h) for h in headers]

    widths = [
        max(len(headers_str[i]), *(len(row[i]) for row in rows_str)) if rows_str else len(headers_str[i])
        for i in range(len(headers_str))
    ]

    def _is_numeric(text: str) -> bool:
        s = text.strip()
        if not s or s in {"-", "nan", "NaN"}:
            return False
        for ch in (",", "%", "±", "~"):
            s = s.replace(ch, "")
        try:
            float(s)
            return True
        except ValueError:
            return False

    numeric_cols = [
        bool(rows_str) and all(_is_numeric(row[i]) or row[i] in {"-", ""} for row in rows_str)
        for i in range(len(headers_str))
    ]
    fmt = " | ".join(f"{{:>{w}}}" if numeric_cols[i] else f"{{:<{w}}}" for i, w in enumerate(widths))
    sep = "-+-".join("-" * w for w in widths)
    return "\n".join([fmt.format(*headers_str), sep] + [fmt.format(*row) for row in rows_str])


def _symbols() -> tuple[str, str, str]:
    """(plusminus, tick, cross); ASCII unless ``ASCII_SYMBOLS`` is 0/false/no."""
    ascii_mode = os.getenv("ASCII_SYMBOLS", "1").lower() in {"1", "true", "yes"}
    if ascii_mode:
        return "+/-", "Y", "N"
    return "±", "✓", "✗"


def _fixed(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return "-" if math.isnan(value) else f"{value:.{MARKDOWN_DECIMALS}f}"
    return str(value)


def _render(records: List[Mapping[str, Any]], columns: Sequence[str], fmt: str) -> str:
    if fmt == "csv":
        frame = pd.DataFrame.from_records(records, columns=list(columns))
        buf = io.StringIO()
        frame.to_csv(buf, index=False, lineterminator="\n")
        return buf.getvalue()
    if fmt == "jsonl":
        # json floats are repr-exact; NaN is written as null
        lines = []
        for rec in records:
            clean = {c: (None if isinstance(rec[c], float) and math.isnan(rec[c]) else rec[c]) for c in columns}
            lines.append(json.dumps(clean, default=json_default))
        return "\n".join(lines) + "\n"
    header = "| " + " | ".join(columns) + " |"
    rule = "|" + "|".join("---" for _ in columns) + "|"
    body = ["| " + " | ".join(_fixed(rec[c]) for c in columns) + " |" for rec in records]
    return "\n".join([header, rule, *body]) + "\n"


def _write(text: str, out: Optional[TextIO]) -> str:
    if out is not None:
        out.write(text)
    return text


def emit(rows: Sequence[ExperimentRow], fmt: str = "markdown", out: Optional[TextIO] = None) -> str:
    """Render experiment rows in a stable column order.

    Markdown rounds reals to three decimals; CSV and JSON lines keep full
    precision. Returns the text and also writes it to ``out`` when given.
    """
    if not rows:
        raise InvalidInputError("emit: no rows to write")
    text = _render([r.as_record() for r in rows], ROW_COLUMNS, normalise_format(fmt))
    return _write(text, out)


def emit_sweep(points: Sequence[SweepPoint], fmt: str = "csv", out: Optional[TextIO] = None) -> str:
    if not points:
        raise InvalidInputError("emit_sweep: no points to write")
    records = [{"beta": p.beta, "err_hat": p.err_hat, "err1_hat": p.err1_hat} for p in points]
    return _write(_render(records, SWEEP_COLUMNS, normalise_format(fmt)), out)


# ────────────────────────────────────────────────────────────────────────────
# Console tables
# ────────────────────────────────────────────────────────────────────────────
def print_experiment_table(rows: Iterable[ExperimentRow]) -> None:
    headers = ["Algorithm", "eps", "Level", "|S|", "r~", "u", "kappa", "Trials"]
    table_rows = []
    for r in rows:
        if r.error:
            table_rows.append([r.algorithm, f"{r.eps:g}", f"{r.level:g}", "-", "-", "-", "-", f"0 ({r.error[:40]})"])
            continue
        table_rows.append(
            [r.algorithm, f"{r.eps:g}", f"{r.level:g}", f"{r.size:.0f}", f"{r.r_tilde:.3f}",
             f"{r.u:.3f}", f"{r.kappa:.3f}", str(r.trials)]
        )
    if not table_rows:
        print("No experiment rows available")
        return
    print("\nTable: Coreset size, empirical ratio, bound and tightness")
    print(_format_table(headers, table_rows))


def print_assumption_table(name: str, report: AssumptionReport) -> None:
    _, tick, cross = _symbols()
    v = report.verdicts

    def mark(ok: bool) -> str:
        return tick if ok else cross

    headers = ["Dataset", "gamma", "threshold", "max r/r-bar", "trimmed", "stable", "outliers", "outliers (trim)"]
    row = [
        name,
        f"{report.gamma_hat:.3f}",
        f"{report.gamma_threshold:.3f}",
        f"{report.max_radius_ratio:.2f}",
        f"{report.trimmed_max_radius_ratio:.2f}",
        mark(v["cost_stable"]),
        mark(v["limited_outliers"]),
        mark(v["limited_outliers_trimmed"]),
    ]
    print("\nTable: Cost stability and limited-outlier diagnostics")
    print(_format_table(headers, [row]))
    if report.flags:
        print(f"⚠️ flags: {', '.join(report.flags)}")


def print_coreset_summary_table(summary: CoresetSummary) -> None:
    print(
        f"\nCoreset: {summary.size} points ({summary.distinct_points} distinct), "
        f"total weight {summary.total_weight:.6g}"
    )
    if summary.opt_estimate is not None:
        print(f"OPT estimate: {summary.opt_estimate:.6g}")
    if not summary.clusters:
        return
    headers = ["Cluster", "Sampled", "Weight", "Assigned", "Kept", "Retention"]
    rows = [
        [
            c.cluster,
            c.sampled,
            f"{c.weight:.4g}",
            "-" if c.n_hat is None else c.n_hat,
            "-" if c.n_filtered is None else c.n_filtered,
            "-" if c.retention is None else f"{c.retention:.3f}",
        ]
        for c in summary.clusters
    ]
    print(_format_table(headers, rows))
