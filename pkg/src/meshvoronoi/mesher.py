"""Voronoi refinement inside a bounding square.

All input points are inserted first; afterwards a FIFO clean loop inserts the
farthest Voronoi vertex (circumcenter) of every cell whose aspect ratio exceeds
``tau``.  Voronoi vertices that fall outside the box, or inside the diametral
disk of a boundary edge, are replaced by the midpoint of that boundary edge so
all Steiner points stay in the closed box.
"""
from __future__ import annotations

import bisect
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complex import DuplicatePointError, Triangulation
from .kernel import WeightClass, circumcenter_float, circumradius_sq

INPUT = int(WeightClass.INPUT)
STEINER = int(WeightClass.STEINER)

# Float aspect tests closer than this (relative) to the threshold are redone exactly.
_CLOSE = 1e-9


class RefinementError(RuntimeError):
    pass


@dataclass(frozen=True)
class MesherConfig:
    tau: float = 3.0
    box_scale: float = 3.0
    max_points: int = 2_000_000

    def __post_init__(self):
        if not self.tau > 2:
            raise ValueError("tau must exceed 2")
        if not self.box_scale >= 2:
            raise ValueError("box_scale must be at least 2")
        if self.max_points < 5:
            raise ValueError("max_points is too small")

    @property
    def feature_constant(self) -> float:
        """K = 2 tau / (tau - 2) in the feature-size condition."""
        return 2 * self.tau / (self.tau - 2)


def bounding_box(points, scale: float = 3.0) -> list[tuple[float, float]]:
    """Corners (ccw from lower-left) of a square ``scale`` times the input extent."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise ValueError("bounding_box of an empty point set")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    extent = max(max(xs) - min(xs), max(ys) - min(ys))
    if extent <= 0:
        extent = 1.0
    half = scale * extent / 2
    cx = (min(xs) + max(xs)) / 2
    cy = (min(ys) + max(ys)) / 2
    corners = [(cx - half, cy - half), (cx + half, cy - half), (cx + half, cy + half), (cx - half, cy + half)]
    lo_x, lo_y = corners[0]
    hi_x, hi_y = corners[2]
    if not all(lo_x < x < hi_x and lo_y < y < hi_y for x, y in pts):
        raise ValueError("input is not strictly inside its bounding box")
    return corners


def _float_r2(ax, ay, bx, by, cx, cy) -> float:
    bx -= ax
    by -= ay
    cx -= ax
    cy -= ay
    cross = bx * cy - by * cx
    return (bx * bx + by * by) * (cx * cx + cy * cy) * ((bx - cx) ** 2 + (by - cy) ** 2) / (4 * cross * cross)


def aspect_sq(tri: Triangulation, v: int) -> Fraction:
    """Exact squared Voronoi aspect ratio of an interior vertex.

    Out-radius is the largest circumradius of the incident triangles, in-radius
    half the distance to the nearest Delaunay neighbor.
    """
    tris, hull = tri.star(v)
    if hull:
        raise ValueError(f"vertex {v} is on the hull; its cell is unbounded")
    px, py = tri.x, tri.y
    r2 = max(circumradius_sq(*_tri_coords(tri, t)) for t in tris)
    vx, vy = Fraction(px[v]), Fraction(py[v])
    nn2 = min((Fraction(px[u]) - vx) ** 2 + (Fraction(py[u]) - vy) ** 2 for u in tri.neighbors(v))
    return 4 * r2 / nn2


def aspect(tri: Triangulation, v: int) -> float:
    return math.sqrt(aspect_sq(tri, v))


def _tri_coords(tri: Triangulation, t: int):
    a, b, c = tri.tv[3 * t : 3 * t + 3]
    return tri.x[a], tri.y[a], tri.x[b], tri.y[b], tri.x[c], tri.y[c]


@dataclass
class MeshResult:
    triangulation: Triangulation
    input_ids: list[int]
    corners: list[tuple[float, float]]
    config: MesherConfig
    steiner_count: int
    insertions: int = 0
    boundary_splits: int = 0
    _aspects: dict | None = field(default=None, repr=False)

    @property
    def aspect_report(self) -> dict[int, float]:
        if self._aspects is None:
            tri = self.triangulation
            self._aspects = {
                v: aspect(tri, v) for v in tri.active_vertices() if not tri.is_hull_vertex(v)
            }
        return self._aspects


class _Refiner:
    def __init__(self, tri: Triangulation, corners, cfg: MesherConfig):
        self.tri = tri
        self.cfg = cfg
        self.tau2 = Fraction(cfg.tau) ** 2
        self.tau2f = float(cfg.tau) ** 2
        self.xlo, self.ylo = corners[0]
        self.xhi, self.yhi = corners[2]
        # hull vertices per box side as sorted (coordinate along the side, id)
        c = {tuple(p): v for v, p in enumerate(zip(tri.x[:4], tri.y[:4]))}
        ll, lr, ur, ul = (c[tuple(p)] for p in corners)
        self.sides = {
            "bottom": [(self.xlo, ll), (self.xhi, lr)],
            "top": [(self.xlo, ul), (self.xhi, ur)],
            "left": [(self.ylo, ll), (self.yhi, ul)],
            "right": [(self.ylo, lr), (self.yhi, ur)],
        }
        self.boundary_splits = 0
        self.insertions = 0

    def worst_triangle(self, v: int) -> int:
        """Incident triangle with the farthest circumcenter if ``v`` is badly shaped, else -1."""
        tri = self.tri
        tris, hull = tri.star(v)
        if hull:
            return -1
        px, py = tri.x, tri.y
        best_t = -1
        best_r2 = -1.0
        for t in tris:
            r2 = _float_r2(*_tri_coords(tri, t))
            if r2 > best_r2:
                best_r2, best_t = r2, t
        vx, vy = px[v], py[v]
        nn2 = min((px[u] - vx) ** 2 + (py[u] - vy) ** 2 for u in tri.neighbors(v))
        lhs = 4 * best_r2
        rhs = self.tau2f * nn2
        if lhs < rhs * (1 - _CLOSE):
            return -1
        if lhs > rhs * (1 + _CLOSE):
            return best_t
        # too close to call in floats
        return best_t if aspect_sq(tri, v) > self.tau2 else -1

    def target_for(self, cx: float, cy: float):
        """Point to insert instead of circumcenter ``(cx, cy)``, with its side if on the boundary."""
        xlo, xhi, ylo, yhi = self.xlo, self.xhi, self.ylo, self.yhi
        if not (xlo < cx < xhi and ylo < cy < yhi):
            excess = {
                "left": xlo - cx,
                "right": cx - xhi,
                "bottom": ylo - cy,
                "top": cy - yhi,
            }
            side = max(excess, key=excess.get)
            along = min(max(cy, ylo), yhi) if side in ("left", "right") else min(max(cx, xlo), xhi)
            return self._split(side, along)
        for side, along, dist in (
            ("bottom", cx, cy - ylo),
            ("top", cx, yhi - cy),
            ("left", cy, cx - xlo),
            ("right", cy, xhi - cx),
        ):
            coords = self.sides[side]
            i = bisect.bisect_right(coords, (along, math.inf)) - 1
            i = min(max(i, 0), len(coords) - 2)
            a, b = coords[i][0], coords[i + 1][0]
            half = (b - a) / 2
            mid = a + half
            if (along - mid) ** 2 + dist * dist < half * half:
                return self._split(side, along)
        return (cx, cy), None

    def _split(self, side: str, along: float):
        coords = self.sides[side]
        i = bisect.bisect_right(coords, (along, math.inf)) - 1
        i = min(max(i, 0), len(coords) - 2)
        a, b = coords[i][0], coords[i + 1][0]
        mid = (a + b) / 2
        if not a < mid < b:
            raise RefinementError(f"boundary edge on {side} side cannot be split further")
        if side == "bottom":
            return (mid, self.ylo), side
        if side == "top":
            return (mid, self.yhi), side
        if side == "left":
            return (self.xlo, mid), side
        return (self.xhi, mid), side

    def run(self) -> None:
        tri = self.tri
        queue = deque(v for v in tri.active_vertices() if not tri.is_hull_vertex(v))
        queued = [False] * tri.n_vertices
        for v in queue:
            queued[v] = True
        cap = self.cfg.max_points
        while queue:
            v = queue.popleft()
            queued[v] = False
            t = self.worst_triangle(v)
            if t < 0:
                continue
            (x, y), side = self.target_for(*circumcenter_float(*_tri_coords(tri, t)))
            try:
                w = tri.insert_vertex(x, y, WeightClass.STEINER, start=t)
            except DuplicatePointError as exc:
                raise RefinementError(f"refinement point ({x!r}, {y!r}) collides with a vertex") from exc
            self.insertions += 1
            if side is not None:
                self.boundary_splits += 1
                along = x if side in ("bottom", "top") else y
                bisect.insort(self.sides[side], (along, w))
            if tri.n_vertices > cap:
                raise RefinementError(f"refinement exceeded max_points={cap}")
            queued.append(False)
            for u in [w, *tri.neighbors(w), v]:
                if not queued[u]:
                    queued[u] = True
                    queue.append(u)


def refine(points, cfg: MesherConfig | None = None) -> MeshResult:
    """Well-spaced superset of ``points`` inside a bounding square."""
    cfg = cfg or MesherConfig()
    pts = [(float(p[0]), float(p[1])) for p in points]
    corners = bounding_box(pts, cfg.box_scale)
    tri = Triangulation.from_box(corners)
    input_ids = []
    for i, (x, y) in enumerate(pts):
        try:
            input_ids.append(tri.insert_vertex(x, y, WeightClass.INPUT))
        except DuplicatePointError as exc:
            raise ValueError(f"duplicate input point {pts[i]} (index {i})") from exc
    refiner = _Refiner(tri, corners, cfg)
    refiner.run()
    steiner = sum(1 for k in tri.kind if k == STEINER)
    return MeshResult(
        tri, input_ids, corners, cfg, steiner, refiner.insertions, refiner.boundary_splits
    )


def feature_size_violations(result: MeshResult) -> list[tuple[int, float, float]]:
    """Steiner vertices breaking ``f_P(v) <= K f_M(v)`` as ``(v, f_P, f_M)`` rows.

    Distances are screened in floats and borderline cases decided exactly.
    """
    tri = result.triangulation
    k = Fraction(result.config.feature_constant)
    ids = result.input_ids
    if len(ids) < 2:
        return []
    xy = np.column_stack([tri.x, tri.y])
    inp = xy[ids]
    bad = []
    for v, kind in enumerate(tri.kind):
        if kind != STEINER:
            continue
        d2p = np.sort(((inp - xy[v]) ** 2).sum(axis=1))
        d2m = ((xy - xy[v]) ** 2).sum(axis=1)
        d2m[v] = np.inf
        fp2, fm2 = d2p[1], d2m.min()
        kf = float(k) ** 2
        if fp2 < kf * fm2 * (1 - _CLOSE):
            continue
        exact_p = sorted(_exact_d2(xy[v], q) for q in inp)[1]
        exact_m = min(_exact_d2(xy[v], xy[u]) for u in range(len(xy)) if u != v)
        if exact_p > k * k * exact_m:
            bad.append((v, math.sqrt(exact_p), math.sqrt(exact_m)))
    return bad


def _exact_d2(p, q) -> Fraction:
    dx = Fraction(float(p[0])) - Fraction(float(q[0]))
    dy = Fraction(float(p[1])) - Fraction(float(q[1]))
    return dx * dx + dy * dy
