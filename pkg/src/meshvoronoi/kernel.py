"""Exact orientation and time-parameterized power predicates.

Coordinates are IEEE doubles (dyadic rationals), so every predicate can be
decided exactly with Python integers after scaling by a common power of two.
The fast paths use Shewchuk's static error bounds and fall back to integer
arithmetic only when the floating-point sign is not certified.

Sign conventions used throughout the package:

* ``orient2d(a, b, c)`` is positive when ``a, b, c`` turn counterclockwise.
* For a counterclockwise triangle ``a, b, c`` the power test on ``d`` is
  positive when ``d`` lies strictly outside the orthoball of the triangle
  (``d`` does not encroach), zero when orthogonal and negative when ``d``
  encroaches.

Input points carry the weight ``w(p, t)**2 = t``, Steiner and box points carry
weight zero, so the lifted height of ``p`` at time ``t`` is ``|p|**2 - t`` for
input points and ``|p|**2`` otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple, Sequence

__all__ = [
    "Sign",
    "WeightClass",
    "EventTime",
    "Ball",
    "DegenerateError",
    "orient2d",
    "lifted_height",
    "incircle_at",
    "power_determinant",
    "flip_time",
    "circumball",
    "circumcenter_float",
    "orient_sign",
    "quad_coefficients",
    "power_sign",
    "incircle_sign",
]

EPS = 2.0**-53
CCW_ERRBOUND = (3.0 + 16.0 * EPS) * EPS
ICC_ERRBOUND = (10.0 + 96.0 * EPS) * EPS
# Below this magnitude the static bounds can be broken by underflow.
UNDERFLOW_GUARD = 1e-270


class DegenerateError(ValueError):
    """Raised when a construction needs non-collinear points."""


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class WeightClass(IntEnum):
    INPUT = 0
    STEINER = 1
    BOX = 2


class Ball(NamedTuple):
    center: tuple[Fraction, Fraction]
    radius_sq: Fraction


@dataclass(frozen=True)
class EventTime:
    """Outcome of solving the linear-in-time power determinant for its root."""

    outcome: str
    time: Fraction | None = None

    AT = "at"
    NO_EVENT = "no_event"
    ALWAYS_DEGENERATE = "always_degenerate"

    @classmethod
    def at(cls, t) -> "EventTime":
        return cls(cls.AT, Fraction(t))

    @property
    def is_event(self) -> bool:
        return self.outcome == self.AT

    def __repr__(self) -> str:
        if self.outcome == self.AT:
            return f"At({self.time})"
        return "NoEvent" if self.outcome == self.NO_EVENT else "AlwaysDegenerate"


NO_EVENT = EventTime(EventTime.NO_EVENT)
ALWAYS_DEGENERATE = EventTime(EventTime.ALWAYS_DEGENERATE)


def _scaled(values) -> tuple[list[int], int]:
    """Exact integers ``n_i`` and a common denominator ``den`` with ``v_i = n_i / den``."""
    ratios = [v.as_integer_ratio() for v in values]
    den = math.lcm(*(d for _, d in ratios))
    return [n * (den // d) for n, d in ratios], den


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    (ax, ay, bx, by, cx, cy), _ = _scaled((ax, ay, bx, by, cx, cy))
    return _sgn((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def orient_sign(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Exact sign of the orientation of three points, filtered."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    bound = CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if bound > UNDERFLOW_GUARD:
        if det > bound:
            return 1
        if -det > bound:
            return -1
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orient2d(a, b, c) -> Sign:
    """Exact orientation of the triangle ``a, b, c``."""
    return Sign(_orient_exact(a[0], a[1], b[0], b[1], c[0], c[1]))


def lifted_height(p, kind: WeightClass, t) -> Fraction:
    """Height of ``p`` on the time-shifted paraboloid (its power distance to the origin)."""
    h = Fraction(p[0]) ** 2 + Fraction(p[1]) ** 2
    return h - Fraction(t) if kind == WeightClass.INPUT else h


def quad_coefficients(xs: Sequence, ys: Sequence, inputs: Sequence[bool]):
    """Integer data describing the power determinant of four labeled points.

    Returns ``(cof, alpha, beta, den)``.  With ``C_i = cof[i] / den**2`` the
    determinant at time ``t`` is ``sum_i h_i(t) * C_i``, which equals
    ``beta / den**4 + t * alpha / den**2``.  ``cof[i]`` is the derivative of the
    determinant with respect to the height of point ``i``.
    """
    ints, den = _scaled(list(xs) + list(ys))
    x0, x1, x2, x3, y0, y1, y2, y3 = ints
    bx, by = x1 - x0, y1 - y0
    cx, cy = x2 - x0, y2 - y0
    dx, dy = x3 - x0, y3 - y0
    o_bcd = (cx - bx) * (dy - by) - (cy - by) * (dx - bx)
    o_acd = cx * dy - cy * dx
    o_abd = bx * dy - by * dx
    o_abc = bx * cy - by * cx
    cof = (-o_bcd, o_acd, -o_abd, o_abc)
    beta = (bx * bx + by * by) * cof[1] + (cx * cx + cy * cy) * cof[2] + (dx * dx + dy * dy) * cof[3]
    alpha = 0
    for flag, c in zip(inputs, cof):
        if flag:
            alpha -= c
    return cof, alpha, beta, den


def _unpack(labeled):
    xs = [p[0][0] for p in labeled]
    ys = [p[0][1] for p in labeled]
    inputs = [WeightClass(p[1]) == WeightClass.INPUT for p in labeled]
    return xs, ys, inputs


def power_determinant(a, b, c, d, t) -> Fraction:
    """Exact value of the lifted 4x4 determinant at time ``t`` (positive = ``d`` outside)."""
    xs, ys, inputs = _unpack((a, b, c, d))
    _, alpha, beta, den = quad_coefficients(xs, ys, inputs)
    return Fraction(beta, den**4) + Fraction(t) * Fraction(alpha, den**2)


def incircle_at(a, b, c, d, t) -> Sign:
    """Power test of ``d`` against the orthoball of ccw ``a, b, c`` at time ``t``.

    Each argument is a ``(point, WeightClass)`` pair.  Raises ``ValueError`` if
    ``a, b, c`` is not counterclockwise.
    """
    if orient2d(a[0], b[0], c[0]) != Sign.POSITIVE:
        raise ValueError("incircle_at requires a counterclockwise triangle")
    return Sign(_sgn(power_determinant(a, b, c, d, t)))


def flip_time(p1, p2, p3, p4) -> EventTime:
    """Time at which four labeled points become orthogonal to a common ball.

    The determinant is ``alpha * t + beta``; only strictly positive roots are
    reported as events.
    """
    xs, ys, inputs = _unpack((p1, p2, p3, p4))
    _, alpha, beta, den = quad_coefficients(xs, ys, inputs)
    if alpha == 0:
        return ALWAYS_DEGENERATE if beta == 0 else NO_EVENT
    root = Fraction(-beta, alpha * den * den)
    return EventTime.at(root) if root > 0 else NO_EVENT


def power_sign(xs, ys, inputs, ids, t=0) -> int:
    """Never-zero power test of point 3 against ccw points 0, 1, 2 at time ``t``.

    Ties are broken lexicographically: first by the sign just after ``t``
    (the time derivative), then by an infinitesimal weight on each vertex where
    larger ids dominate smaller ones.
    """
    cof, alpha, beta, den = quad_coefficients(xs, ys, inputs)
    if t:
        t = Fraction(t)
        s = _sgn(beta * t.denominator + alpha * den * den * t.numerator)
    else:
        s = _sgn(beta)
    if s:
        return s
    if alpha:
        return _sgn(alpha)
    for k in sorted(range(4), key=lambda k: ids[k], reverse=True):
        if cof[k]:
            return -_sgn(cof[k])
    raise DegenerateError("power test on a collinear configuration")


def incircle_sign(ax, ay, bx, by, cx, cy, dx, dy, ka, kb, kc, kd, ia, ib, ic, id_) -> int:
    """Filtered never-zero power test at time zero (perturbed towards ``0+``).

    ``ka..kd`` are truthy for input points, ``ia..id_`` are vertex ids.
    """
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy
    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    bound = ICC_ERRBOUND * permanent
    if bound > UNDERFLOW_GUARD:
        # det > 0 means d inside the circle, i.e. a negative power test
        if det > bound:
            return -1
        if -det > bound:
            return 1
    return power_sign((ax, bx, cx, dx), (ay, by, cy, dy), (ka, kb, kc, kd), (ia, ib, ic, id_))


def circumball(a, b, c) -> Ball:
    """Exact circumcenter and squared circumradius of three points."""
    ints, den = _scaled((a[0], a[1], b[0], b[1], c[0], c[1]))
    ax, ay, bx, by, cx, cy = ints
    bx, by, cx, cy = bx - ax, by - ay, cx - ax, cy - ay
    d = 2 * (bx * cy - by * cx)
    if d == 0:
        raise DegenerateError("circumball of collinear points")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = Fraction(cy * b2 - by * c2, d * den)
    uy = Fraction(bx * c2 - cx * b2, d * den)
    center = (Fraction(ax, den) + ux, Fraction(ay, den) + uy)
    return Ball(center, ux * ux + uy * uy)


def circumradius_sq(ax, ay, bx, by, cx, cy) -> Fraction:
    """Exact squared circumradius of a non-degenerate triangle."""
    ints, den = _scaled((ax, ay, bx, by, cx, cy))
    ax, ay, bx, by, cx, cy = ints
    bx, by, cx, cy = bx - ax, by - ay, cx - ax, cy - ay
    cross = bx * cy - by * cx
    if cross == 0:
        raise DegenerateError("circumradius of collinear points")
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    e2 = (bx - cx) ** 2 + (by - cy) ** 2
    return Fraction(b2 * c2 * e2, 4 * cross * cross * den * den)


def circumcenter_float(ax, ay, bx, by, cx, cy) -> tuple[float, float]:
    """Circumcenter correctly rounded to doubles."""
    center, _ = circumball((ax, ay), (bx, by), (cx, cy))
    return float(center[0]), float(center[1])
