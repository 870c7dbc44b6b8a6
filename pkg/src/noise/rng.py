"""Splittable, platform-independent random streams.

A ``SeededRng`` is a master seed plus a key path. Every consumer asks for a
substream keyed by what it is (``"restart", 3`` or ``"perturb", block``), so
results never depend on call order or on how work is spread over threads.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

KeyPart = Union[int, str]


def _key_int(part: KeyPart) -> int:
    if isinstance(part, (int, np.integer)) and not isinstance(part, bool):
        if part < 0:
            raise ValueError(f"rng key parts must be >= 0, got {part}")
        return int(part)
    return zlib.crc32(str(part).encode("utf-8"))


@dataclass(frozen=True)
class SeededRng:
    seed: int
    key: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "seed", int(self.seed) & 0xFFFFFFFFFFFFFFFF)
        object.__setattr__(self, "key", tuple(_key_int(p) for p in self.key))

    def child(self, *parts: KeyPart) -> "SeededRng":
        return SeededRng(self.seed, self.key + tuple(_key_int(p) for p in parts))

    def stream(self, *parts: KeyPart) -> np.random.Generator:
        """A fresh generator for the substream at ``key + parts``."""
        spawn_key = self.key + tuple(_key_int(p) for p in parts)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=spawn_key)))

    def derive_seed(self, *parts: KeyPart) -> int:
        """A 63-bit integer seed for APIs that take a plain ``seed``."""
        return int(self.stream(*parts).integers(0, 2**63 - 1))


def as_rng(rng: "SeededRng | int | np.random.Generator | None") -> np.random.Generator:
    """Accept the several forms callers hand in and return a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, SeededRng):
        return rng.stream()
    return np.random.default_rng(rng)
