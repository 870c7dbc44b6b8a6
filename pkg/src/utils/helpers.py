"""
helpers.py
----------
Small shared utilities used across the coreset project.
"""

from __future__ import annotations

import dataclasses
import enum
import math
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, List, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


# ────────────────────────────────────────────────────────────────────────────
# 1. Worker pool
# ────────────────────────────────────────────────────────────────────────────
def worker_count() -> int:
    """Threads used for restarts, grid cells and trials (``CORESET_THREADS``)."""
    raw = os.getenv("CORESET_THREADS")
    if raw is None or not raw.strip():
        return max(1, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


_pool_state = threading.local()


def ordered_map(fn: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> List[R]:
    """Apply ``fn`` to every item, in parallel when allowed, keeping input order.

    Only the outermost call opens a pool; calls made from inside a pool worker
    run serially in that worker.
    """
    items = list(items)
    workers = worker_count() if workers is None else max(1, workers)
    if workers == 1 or len(items) <= 1 or getattr(_pool_state, "active", False):
        return [fn(item) for item in items]

    def _run(item: T) -> R:
        _pool_state.active = True
        try:
            return fn(item)
        finally:
            _pool_state.active = False

    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(_run, items))


# ────────────────────────────────────────────────────────────────────────────
# 2. Sample-size rounding
# ────────────────────────────────────────────────────────────────────────────
def floor_size(x: float) -> int:
    """Integer part of a size formula, tolerant to 1e-9 representation error.

    9/0.1 + 6/0.1**2 evaluates to 690.0000000000001 or 689.9999999999999
    depending on the expression order; both must give 690.
    """
    return int(math.floor(x + 1e-9))


def float_range(start: float, stop: float, step: float) -> List[float]:
    """Inclusive arithmetic grid ``start, start+step, ..., <= stop``."""
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(max(count, 0))]


# ────────────────────────────────────────────────────────────────────────────
# 3. JSON
# ────────────────────────────────────────────────────────────────────────────
def json_default(obj: Any) -> Any:
    """JSON serialiser for numpy scalars, arrays, enums and dataclasses."""
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return dataclasses.asdict(obj)
    raise TypeError(f"Object of type {obj.__class__.__name__} is not JSON serializable")


def mean_or_nan(values: Iterable[float]) -> float:
    vals = [float(v) for v in values]
    return float(np.mean(vals)) if vals else float("nan")
