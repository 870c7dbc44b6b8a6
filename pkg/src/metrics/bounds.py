"""Theoretical quality bounds and sizes, with every hidden constant set to 1."""
from __future__ import annotations

import math
from typing import Union

from coreset.cn import Algorithm
from noise.models import NoiseModel, NoiseSpec
from utils.validators import (
    InvalidInputError,
    validate_alpha,
    validate_count,
    validate_epsilon,
    validate_nonnegative,
    validate_power,
)

NoiseLike = Union[NoiseSpec, float]


def _level(noise: NoiseLike, d: int) -> float:
    if isinstance(noise, NoiseSpec):
        return noise.bound_level(d)
    return validate_nonnegative(noise, "level")


def _opt(opt: float) -> float:
    opt = float(opt)
    if not opt > 0.0:
        raise InvalidInputError(f"opt: must be > 0, got {opt}")
    return opt


def theoretical_bound(
    algorithm: Algorithm | str,
    eps: float,
    noise: NoiseLike,
    n: int,
    d: int,
    k: int,
    opt: float,
    alpha: float = 1.0,
) -> float:
    """u_S for the given construction.

    CN:       (1 + eps + x + sqrt(x))^2 · alpha,   x = level·n·d / OPT
    CN-alpha: (1 + eps + level·k·d/OPT + x) · alpha

    ``level`` is θ (model I), σ² (model II) or σ²·trace(Σ)/d (correlated);
    ``noise`` may be a NoiseSpec or a bare model-I level.
    """
    algorithm = Algorithm(algorithm)
    eps = validate_epsilon(eps)
    opt = _opt(opt)
    alpha = validate_alpha(alpha)
    level = _level(noise, d)
    x = level * n * d / opt
    if algorithm is Algorithm.CN:
        return (1.0 + eps + x + math.sqrt(x)) ** 2 * alpha
    return (1.0 + eps + level * k * d / opt + x) * alpha


def theorem_bound_cn_alpha(
    eps: float,
    noise: NoiseLike,
    n: int,
    d: int,
    k: int,
    opt: float,
    alpha: float = 1.0,
) -> float:
    """Alternate CN-alpha bound keeping the sqrt(alpha - 1) cross terms.

    alpha · (1 + eps + θkd/OPT + (sqrt(alpha-1)/alpha)·(sqrt(θkd·OPT) + θnd)/OPT)
    """
    eps = validate_epsilon(eps)
    opt = _opt(opt)
    alpha = validate_alpha(alpha)
    level = _level(noise, d)
    tkd = level * k * d
    cross = math.sqrt(alpha - 1.0) / alpha * (math.sqrt(tkd * opt) + level * n * d) / opt
    return alpha * (1.0 + eps + tkd / opt + cross)


def kz_bound(
    eps: float,
    level: float,
    n: int,
    d: int,
    z: float,
    opt: float,
    model: NoiseModel | str = NoiseModel.MODEL_I,
) -> float:
    """Err(S, P) bound for (k,z)-clustering: eps + t + t^(1/z).

    t = θ·n·d^(z/2)/OPT under model I and σ^z·n·d^(z/2)/OPT under model II.
    At z = 2, (1 + kz_bound)^2 is the CN bound.
    """
    eps = validate_nonnegative(eps, "eps")
    z = validate_power(z)
    opt = _opt(opt)
    level = validate_nonnegative(level, "level")
    model = NoiseModel(model)
    if model is NoiseModel.CORRELATED:
        raise InvalidInputError("kz_bound: the correlated model has no (k,z) bound")
    mass = level if model is NoiseModel.MODEL_I else level ** (z / 2.0)
    t = mass * n * d ** (z / 2.0) / opt
    return eps + t + t ** (1.0 / z)


def kz_ratio_bound(eps: float, level: float, n: int, d: int, z: float, opt: float, alpha: float = 1.0,
                   model: NoiseModel | str = NoiseModel.MODEL_I) -> float:
    return (1.0 + kz_bound(eps, level, n, d, z, opt, model)) ** 2 * validate_alpha(alpha)


def theoretical_cn_size(k: int, eps: float) -> float:
    """Advisory ``min(k^1.5/eps^2, k/eps^4)``, log factors dropped."""
    validate_count(k, "k")
    eps = validate_epsilon(eps)
    return min(k**1.5 / eps**2, k / eps**4)


def theoretical_cn_alpha_size(
    k: int,
    eps: float,
    alpha: float,
    noise: NoiseLike,
    n: int,
    d: int,
    opt: float,
) -> float:
    """Advisory CN-alpha size ``k log k/(eps - D) + (alpha-1) k log k/(eps - D)^2``.

    D = sqrt(alpha - 1)·θnd/(alpha·OPT). Infinite when eps <= D.
    """
    validate_count(k, "k")
    eps = validate_epsilon(eps)
    alpha = validate_alpha(alpha)
    opt = _opt(opt)
    level = _level(noise, d)
    gap = eps - math.sqrt(alpha - 1.0) * level * n * d / (alpha * opt)
    if gap <= 0:
        return math.inf
    klogk = k * math.log(k) if k > 1 else 1.0
    return klogk / gap + (alpha - 1.0) * klogk / gap**2

