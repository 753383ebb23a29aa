"""Seeded point-set families for tests and benchmarks."""
from __future__ import annotations

import math
import random

FAMILIES = ("uniform", "clustered", "grid", "two-scale")

# default cluster scale exponent for the two-scale family
TWO_SCALE_K = 10


def _nudge(v: float, rng: random.Random, ulps: int = 4) -> float:
    """Move ``v`` by a few units in the last place."""
    steps = rng.randint(-ulps, ulps)
    toward = math.inf if steps > 0 else -math.inf
    for _ in range(abs(steps)):
        v = math.nextafter(v, toward)
    return v


def uniform(n: int, rng: random.Random) -> list[tuple[float, float]]:
    return [(rng.random(), rng.random()) for _ in range(n)]


def clustered(n: int, rng: random.Random) -> list[tuple[float, float]]:
    k = max(1, round(math.sqrt(n) / 2))
    centers = [(rng.random(), rng.random()) for _ in range(k)]
    pts = []
    for i in range(n):
        cx, cy = centers[i % k]
        pts.append((rng.gauss(cx, 0.02), rng.gauss(cy, 0.02)))
    return pts


def grid(n: int, rng: random.Random) -> list[tuple[float, float]]:
    side = math.isqrt(n - 1) + 1
    pts = []
    for i in range(n):
        r, c = divmod(i, side)
        pts.append((_nudge(c / side, rng), _nudge(r / side, rng)))
    return pts


def two_scale(n: int, rng: random.Random, k: int = TWO_SCALE_K) -> list[tuple[float, float]]:
    """Coarse points in the unit square plus a cluster of side ``2**-(k+1)`` near the origin.

    One coarse point sits in ``[0.7, 1]^2`` and the cluster inside
    ``[0, 0.1]^2``, so for ``n >= 3`` the spread is at least ``2**k``.
    """
    if n < 3:
        return uniform(n, rng)
    side = 2.0 ** -(k + 1)
    n_fine = max(2, n // 2)
    ox, oy = 0.1 * rng.random(), 0.1 * rng.random()
    fine = [(ox + side * rng.random(), oy + side * rng.random()) for _ in range(n_fine)]
    coarse = [(0.7 + 0.3 * rng.random(), 0.7 + 0.3 * rng.random())]
    coarse += [(rng.random(), rng.random()) for _ in range(n - n_fine - 1)]
    return coarse + fine


def generate(family: str, n: int, seed: int = 0, k: int = TWO_SCALE_K) -> list[tuple[float, float]]:
    """Deterministic point set for ``(family, n, seed)`` with duplicates removed by resampling."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    rng = random.Random(f"{family}:{n}:{seed}:{k}")
    for _ in range(100):
        if family == "uniform":
            pts = uniform(n, rng)
        elif family == "clustered":
            pts = clustered(n, rng)
        elif family == "grid":
            pts = grid(n, rng)
        else:
            pts = two_scale(n, rng, k)
        if len(set(pts)) == n:
            return pts
    raise RuntimeError("could not draw distinct points")  # pragma: no cover
