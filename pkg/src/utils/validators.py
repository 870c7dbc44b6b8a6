"""
validators.py
--------------
Lightweight sanity checks for every array and parameter that enters the
coreset pipeline.
All functions return the normalised value (or True) on success or raise
InvalidInputError with details.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np


class InvalidInputError(ValueError):
    """Raised when an input violates a documented precondition."""


# ────────────────────────────────────────────────────────────────────────────
def _require(cond: bool, label: str, message: str) -> None:
    if not cond:
        raise InvalidInputError(f"{label}: {message}")


# ────────────────────────────────────────────────────────────────────────────
# 1. Arrays
# ────────────────────────────────────────────────────────────────────────────
def validate_points(points: Any, label: str = "points", *, allow_empty: bool = False) -> np.ndarray:
    """Return ``points`` as a read-only ``(n, d)`` float64 array.

    1-D input is read as ``n`` points in one dimension.
    """
    arr = np.array(points, dtype=np.float64, copy=True)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    _require(arr.ndim == 2, label, f"expected a 2-D array, got {arr.ndim} dimensions")
    _require(arr.shape[1] >= 1, label, "dimension must be at least 1")
    if not allow_empty:
        _require(arr.shape[0] >= 1, label, "at least one point is required")
    _require(bool(np.all(np.isfinite(arr))), label, "coordinates must be finite")
    arr.setflags(write=False)
    return arr


def validate_weights(weights: Any, n: int, label: str = "weights") -> np.ndarray:
    arr = np.array(weights, dtype=np.float64, copy=True).reshape(-1)
    _require(arr.shape[0] == n, label, f"expected {n} weights, got {arr.shape[0]}")
    _require(bool(np.all(np.isfinite(arr))), label, "weights must be finite")
    _require(bool(np.all(arr >= 0)), label, "weights must be nonnegative")
    arr.setflags(write=False)
    return arr


def validate_dimension(d_data: int, d_centers: int, label: str = "centers") -> bool:
    _require(
        d_data == d_centers,
        label,
        f"dimension mismatch (data d={d_data}, centers d={d_centers})",
    )
    return True


# ────────────────────────────────────────────────────────────────────────────
# 2. Scalars
# ────────────────────────────────────────────────────────────────────────────
def validate_power(z: float) -> float:
    z = float(z)
    _require(math.isfinite(z) and z >= 1.0, "z", f"power must be >= 1, got {z}")
    return z


def validate_epsilon(eps: float) -> float:
    eps = float(eps)
    _require(0.0 < eps < 1.0, "eps", f"must lie in (0, 1), got {eps}")
    return eps


def validate_probability(theta: float, label: str = "theta") -> float:
    theta = float(theta)
    _require(0.0 <= theta <= 1.0, label, f"must lie in [0, 1], got {theta}")
    return theta


def validate_nonnegative(value: float, label: str) -> float:
    value = float(value)
    _require(math.isfinite(value) and value >= 0.0, label, f"must be >= 0, got {value}")
    return value


def validate_positive(value: float, label: str) -> float:
    value = float(value)
    _require(math.isfinite(value) and value > 0.0, label, f"must be > 0, got {value}")
    return value


def validate_count(value: int, label: str, *, minimum: int = 1) -> int:
    _require(
        isinstance(value, (int, np.integer)) and not isinstance(value, bool),
        label,
        f"must be an integer, got {type(value).__name__}",
    )
    value = int(value)
    _require(value >= minimum, label, f"must be >= {minimum}, got {value}")
    return value


def validate_alpha(alpha: float) -> float:
    alpha = float(alpha)
    _require(math.isfinite(alpha) and alpha >= 1.0, "alpha", f"must be >= 1, got {alpha}")
    return alpha
