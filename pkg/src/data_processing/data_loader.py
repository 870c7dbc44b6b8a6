"""
data_loader.py
---------------
Load benchmark tables into Datasets.

* CSV with a header row; a schema file picks the continuous columns
* unparsable cells ('?' markers in the UCI files) drop the whole row
* every column is z-scored; a constant column is divided by 1 and flagged
* ``synthetic:`` specs resolve to the worked instances instead of a file
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from core.types import Dataset
from noise.rng import SeededRng
from synthetic import gen_beta_grid, gen_lower_bound_instance, gen_separated_clusters, gen_two_point
from utils.validators import InvalidInputError, validate_count

logger = logging.getLogger(__name__)

CONTINUOUS = "continuous"
CATEGORICAL = "categorical"
VARIANCE_FLOOR = 1e-12
MISSING_MARKERS = ["?", "NA", "N/A", ""]


class DataLoadError(OSError):
    """Raised when a data or schema file cannot be read."""

    def __init__(self, path: Path | str, reason: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {reason}")


@dataclass
class LoadedTable:
    dataset: Dataset
    columns: List[str]
    dropped_rows: int = 0
    flagged_columns: List[str] = field(default_factory=list)


def load_schema(path: Path | str) -> Dict[str, str]:
    """Read ``name kind`` lines; blank lines and ``#`` comments are skipped.

    Column names may contain spaces: the kind is the last token.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataLoadError(path, f"cannot read schema ({exc})") from exc

    schema: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.rsplit(None, 1)
        if len(parts) != 2:
            raise InvalidInputError(f"schema line {lineno}: expected 'name kind', got {line!r}")
        name, kind = parts[0].strip(), parts[1].lower()
        if kind not in (CONTINUOUS, CATEGORICAL):
            raise InvalidInputError(f"schema line {lineno}: kind must be {CONTINUOUS} or {CATEGORICAL}, got {kind!r}")
        schema[name] = kind
    return schema


def standardize(frame: pd.DataFrame) -> Tuple[pd.DataFrame, List[str]]:
    """Per-column z-score (population std); returns the frame and the floored columns."""
    mean = frame.mean(axis=0)
    std = frame.std(axis=0, ddof=0)
    floored = [c for c in frame.columns if not std[c] ** 2 > VARIANCE_FLOOR]
    flagged = [str(c) for c in floored]
    if floored:
        logger.warning("standardize: columns %s have (near) zero variance; dividing by 1", flagged)
        std[floored] = 1.0
    return (frame - mean) / std, flagged


def load_table(path: Path | str, schema: Optional[Dict[str, str]] = None) -> LoadedTable:
    """Parse, clean and standardize the continuous columns of a CSV file."""
    path = Path(path)
    try:
        raw = pd.read_csv(path, na_values=MISSING_MARKERS, skipinitialspace=True, dtype=str, keep_default_na=True)
    except FileNotFoundError as exc:
        raise DataLoadError(path, "file not found") from exc
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise DataLoadError(path, f"cannot parse CSV ({exc})") from exc
    raw.columns = [str(c).strip() for c in raw.columns]

    if schema is not None:
        wanted = [name for name, kind in schema.items() if kind == CONTINUOUS]
        missing = [c for c in wanted if c not in raw.columns]
        if missing:
            raise InvalidInputError(f"schema: columns {missing} not in {path.name}")
    else:
        wanted = list(raw.columns)
    if not wanted:
        raise InvalidInputError(f"{path.name}: no continuous columns selected")

    numeric = raw[wanted].apply(pd.to_numeric, errors="coerce")
    if schema is None:
        # without a schema, keep the columns that parse at all
        wanted = [c for c in wanted if numeric[c].notna().any()]
        if not wanted:
            raise InvalidInputError(f"{path.name}: no numeric columns")
        numeric = numeric[wanted]

    bad = numeric.isna().any(axis=1) | ~np.isfinite(numeric.fillna(0.0)).all(axis=1)
    dropped = int(bad.sum())
    if dropped:
        logger.warning("%s: dropped %d of %d rows with missing or unparsable values", path.name, dropped, len(numeric))
    clean = numeric.loc[~bad].astype(np.float64)
    if clean.empty:
        raise InvalidInputError(f"{path.name}: no complete rows left")

    scaled, flagged = standardize(clean)
    logger.info("%s: loaded n=%d d=%d", path.name, len(scaled), len(wanted))
    return LoadedTable(Dataset(scaled.to_numpy()), list(wanted), dropped, flagged)


def load_csv(path: Path | str, schema: Optional[Dict[str, str]] = None) -> Dataset:
    return load_table(path, schema).dataset


def subsample(data: Dataset, m: int, seed: int = 0) -> Dataset:
    """m points drawn uniformly without replacement, kept in their original order."""
    validate_count(m, "m")
    if m > data.n:
        raise InvalidInputError(f"m: cannot subsample {m} of {data.n} points")
    gen = SeededRng(seed).stream("subsample")
    idx = np.sort(gen.choice(data.n, size=m, replace=False))
    return data.take(idx)


def _parse_params(text: str) -> Dict[str, float]:
    params: Dict[str, float] = {}
    for item in filter(None, text.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidInputError(f"dataset spec: expected key=value, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError as exc:
            raise InvalidInputError(f"dataset spec: {key.strip()} must be numeric, got {value!r}") from exc
    return params


def _int_param(params: Dict[str, float], key: str, default: Optional[int] = None) -> int:
    if key not in params:
        if default is None:
            raise InvalidInputError(f"dataset spec: missing {key}=")
        return default
    value = params[key]
    if not math.isfinite(value) or value != int(value):
        raise InvalidInputError(f"dataset spec: {key} must be an integer, got {value}")
    return int(value)


def resolve_dataset(
    spec: str,
    schema: Optional[Dict[str, str]] = None,
    subsample_to: Optional[int] = None,
    seed: int = 0,
) -> Dataset:
    """A CSV path or ``synthetic:<name>:k=v,...``.

    Synthetic names: ``two_point`` (n), ``beta`` (n, beta), ``blobs``
    (k, per_cluster, d, spread) and ``lower_bound`` (n).
    """
    if spec.startswith("synthetic:"):
        _, name, rest = (spec.split(":", 2) + [""])[:3]
        p = _parse_params(rest)
        if name == "two_point":
            data = gen_two_point(_int_param(p, "n"))
        elif name == "beta":
            data = gen_beta_grid(_int_param(p, "n"), p.get("beta", 2.5))
        elif name == "blobs":
            data = gen_separated_clusters(
                _int_param(p, "k", 3),
                _int_param(p, "per_cluster", 100),
                _int_param(p, "d", 2),
                p.get("spread", 1.0),
                seed,
            )
        elif name == "lower_bound":
            data = gen_lower_bound_instance(_int_param(p, "n"))
        else:
            raise InvalidInputError(f"dataset spec: unknown synthetic instance {name!r}")
    else:
        data = load_csv(spec, schema)

    if subsample_to is not None and subsample_to < data.n:
        data = subsample(data, subsample_to, seed)
    return data
