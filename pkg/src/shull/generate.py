"""Deterministic point-set generators for tests and benchmarks."""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidInput

KINDS = ("uniform", "disk", "circle", "grid", "collinear", "clustered")


def generate(kind: str, n: int, rng_seed: int = 0) -> np.ndarray:
    """Return ``n`` points of the given kind as an ``(n, 2)`` float64 array.

    * ``uniform``: unit square.
    * ``disk``: uniform over the unit disk.
    * ``circle``: evenly spaced on the unit circle with a random phase, so
      every point is cocircular.
    * ``grid``: the first ``n`` nodes, row by row, of the smallest square
      integer lattice holding ``n`` nodes (the seed is unused).
    * ``collinear``: random points on the line ``y = x / 2``, exactly
      collinear in floating point.
    * ``clustered``: Gaussian blobs (sigma 0.01) around ``ceil(n / 100)``
      uniform centers.
    """
    if n < 1:
        raise InvalidInput(f"n must be at least 1, got {n}")
    rng = np.random.default_rng(rng_seed)
    if kind == "uniform":
        return rng.random((n, 2))
    if kind == "disk":
        r = np.sqrt(rng.random(n))
        theta = 2.0 * np.pi * rng.random(n)
        return np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    if kind == "circle":
        theta = 2.0 * np.pi * (np.arange(n) + rng.random()) / n
        return np.column_stack((np.cos(theta), np.sin(theta)))
    if kind == "grid":
        side = math.isqrt(n - 1) + 1
        k = np.arange(n)
        return np.column_stack((k % side, k // side)).astype(np.float64)
    if kind == "collinear":
        t = rng.random(n)
        return np.column_stack((t, 0.5 * t))
    if kind == "clustered":
        k = -(-n // 100)
        centers = rng.random((k, 2))
        which = rng.integers(0, k, n)
        return centers[which] + 0.01 * rng.standard_normal((n, 2))
    raise InvalidInput(f"unknown generator kind {kind!r}; expected one of {', '.join(KINDS)}")
