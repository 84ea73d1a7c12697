"""Seeded Erdős–Rényi graphs with an exact edge count."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class GenSpec:
    n: int
    m: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        cap = self.n * (self.n - 1) // 2
        if self.m > cap:
            raise ValueError(f"m={self.m} exceeds the {cap} possible edges on {self.n} vertices")


def _pair(k: int) -> tuple[int, int]:
    # k enumerates pairs (j, i), j < i, row by row: i(i-1)/2 + j
    i = (1 + isqrt(1 + 8 * k)) // 2
    return k - i * (i - 1) // 2, i


def gen_er(spec: GenSpec) -> Graph:
    """``m`` distinct edges drawn uniformly without replacement."""
    total = spec.n * (spec.n - 1) // 2
    rng = np.random.Generator(np.random.Philox(spec.seed & ((1 << 64) - 1)))
    picks = rng.choice(total, size=spec.m, replace=False) if spec.m else []
    edges = sorted(_pair(int(k)) for k in picks)
    return Graph(spec.n, edges)
