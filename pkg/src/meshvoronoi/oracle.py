"""Brute-force references and bound instrumentation.

Nothing here touches the triangulation engine: the Delaunay and weighted
Delaunay references enumerate every triple and test it against every other
point with the kernel predicates, so they can be used to check the engine
honestly.  The float filter in ``_accel`` only discards triples whose sign is
certified; everything uncertain is decided exactly.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import _accel
from .kernel import WeightClass, orient_sign, power_sign
from .simplices import SimplexSet

__all__ = [
    "brute_delaunay",
    "brute_weighted_delaunay",
    "spread",
    "face_count",
    "verify_equal",
    "bound_report",
    "BoundReport",
    "Diff",
    "log_spread",
]


def _check_distinct(xs, ys) -> None:
    seen = {}
    for i, p in enumerate(zip(xs, ys)):
        if p in seen:
            raise ValueError(f"duplicate point {p} at indices {seen[p]} and {i}")
        seen[p] = i


def _exact_empty(i, j, k, xs, ys, inputs, ids, t) -> bool:
    for d in range(len(xs)):
        if d == i or d == j or d == k:
            continue
        s = power_sign(
            (xs[i], xs[j], xs[k], xs[d]),
            (ys[i], ys[j], ys[k], ys[d]),
            (inputs[i], inputs[j], inputs[k], inputs[d]),
            (ids[i], ids[j], ids[k], ids[d]),
            t,
        )
        if s < 0:
            return False
    return True


def _empty_triangles(xs, ys, inputs, ids, t) -> set[tuple[int, int, int]]:
    w = np.array([float(t) if f else 0.0 for f in inputs])
    tris, flags = _accel.scan_empty_balls(np.array(xs, dtype=float), np.array(ys, dtype=float), w)
    out = set()
    for (i, j, k), flag in zip(tris.tolist(), flags.tolist()):
        if flag == _accel.UNCERTAIN_ORIENT:
            o = orient_sign(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k])
            if o == 0:
                continue
            if o < 0:
                j, k = k, j
            flag = _accel.UNCERTAIN
        if flag == _accel.ACCEPT or _exact_empty(i, j, k, xs, ys, inputs, ids, t):
            out.add((i, j, k))
    return out


def brute_delaunay(points, ids=None) -> SimplexSet:
    """Delaunay complex of ``points`` over their indices, by exhaustive empty-ball tests.

    Cocircular ties use the same symbolic perturbation as the engine, with
    ``ids`` (default: the indices) ranking the perturbation.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    n = len(pts)
    if n < 2:
        raise ValueError("brute_delaunay needs at least two points")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    _check_distinct(xs, ys)
    ids = list(range(n)) if ids is None else list(ids)
    tris = _empty_triangles(xs, ys, [False] * n, ids, 0) if n >= 3 else set()
    if tris:
        return SimplexSet.build(tris, vertices=range(n))
    # all points collinear: consecutive pairs along the line
    order = sorted(range(n), key=lambda i: pts[i])
    return SimplexSet.build((), zip(order, order[1:]), range(n))


def brute_weighted_delaunay(labeled, t, ids=None) -> SimplexSet:
    """Weighted Delaunay complex at time ``t`` of ``(point, WeightClass)`` pairs.

    A ccw triple is kept when no other weighted point encroaches its orthoball;
    points hidden by heavier neighbours appear in no simplex.
    """
    labeled = list(labeled)
    if len(labeled) < 3:
        raise ValueError("brute_weighted_delaunay needs at least three points")
    t = Fraction(t)
    if t < 0:
        raise ValueError("time must be non-negative")
    xs = [float(p[0][0]) for p in labeled]
    ys = [float(p[0][1]) for p in labeled]
    _check_distinct(xs, ys)
    inputs = [WeightClass(p[1]) == WeightClass.INPUT for p in labeled]
    ids = list(range(len(labeled))) if ids is None else list(ids)
    return SimplexSet.build(_empty_triangles(xs, ys, inputs, ids, t))


def spread(points) -> float:
    """Ratio of the largest to the smallest pairwise distance."""
    pts = np.asarray([(float(p[0]), float(p[1])) for p in points], dtype=float)
    if len(pts) < 2:
        raise ValueError("spread needs at least two points")
    _check_distinct(pts[:, 0].tolist(), pts[:, 1].tolist())
    lo = hi = None
    dlo, dhi = math.inf, -1.0
    for i in range(len(pts) - 1):
        d2 = ((pts[i + 1 :] - pts[i]) ** 2).sum(axis=1)
        a = int(np.argmin(d2))
        b = int(np.argmax(d2))
        if d2[a] < dlo:
            dlo, lo = d2[a], (i, i + 1 + a)
        if d2[b] > dhi:
            dhi, hi = d2[b], (i, i + 1 + b)

    def exact_d2(i, j):
        dx = Fraction(pts[i, 0]) - Fraction(pts[j, 0])
        dy = Fraction(pts[i, 1]) - Fraction(pts[j, 1])
        return dx * dx + dy * dy

    dmin = exact_d2(*lo)
    if dmin == 0:
        raise ValueError("duplicate points")
    return math.sqrt(exact_d2(*hi) / dmin)


def log_spread(delta: float) -> float:
    return math.log2(delta + 2.0)


def face_count(s: SimplexSet) -> int:
    """Number of Voronoi faces dual to the simplices of ``s``."""
    return len(s.vertices) + len(s.edges) + len(s.triangles)


@dataclass(frozen=True)
class Diff:
    missing: SimplexSet
    extra: SimplexSet

    @property
    def ok(self) -> bool:
        return self.missing.is_empty() and self.extra.is_empty()

    def summary(self) -> str:
        if self.ok:
            return "identical"
        m, e = self.missing, self.extra
        return (
            f"missing {len(m.vertices)}v/{len(m.edges)}e/{len(m.triangles)}t "
            f"(e.g. {sorted(m.triangles)[:3] or sorted(m.edges)[:3]}), "
            f"extra {len(e.vertices)}v/{len(e.edges)}e/{len(e.triangles)}t "
            f"(e.g. {sorted(e.triangles)[:3] or sorted(e.edges)[:3]})"
        )


def verify_equal(actual, expected: SimplexSet) -> Diff:
    """Simplices of ``expected`` absent from ``actual`` and vice versa."""
    if not isinstance(actual, SimplexSet):
        actual = actual.simplices()
    return Diff(expected.difference(actual), actual.difference(expected))


@dataclass(frozen=True)
class BoundReport:
    n: int
    f: int
    spread: float
    steiner_count: int
    flips: int
    potential_flips: int
    ratio_flip: float
    ratio_potential: float
    ratio_size: float
    scaffolding_ratio: float
    wall_time: float

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(stats) -> BoundReport:
    """Normalise run counters by the output-sensitive bounds."""
    lg = log_spread(stats.spread)
    flips = stats.flips_22 + stats.flips_31
    f = max(stats.f, 1)
    n = max(stats.n, 1)
    return BoundReport(
        n=stats.n,
        f=stats.f,
        spread=stats.spread,
        steiner_count=stats.steiner_count,
        flips=flips,
        potential_flips=stats.potential_flips_seen,
        ratio_flip=flips / (f * lg),
        ratio_potential=stats.potential_flips_seen / (f * lg),
        ratio_size=stats.steiner_count / (n * lg),
        scaffolding_ratio=stats.scaffolding_count / f,
        wall_time=stats.wall_time,
    )
