"""Mutable planar triangulation with point location, insertion and bistellar flips.

Triangles live in flat lists: triangle ``t`` has ccw vertices
``tv[3t:3t+3]`` and neighbor ``tn[3t+k]`` across the edge opposite vertex
``tv[3t+k]`` (``-1`` on the hull).  Dead triangles and removed vertices are
tombstoned so ids stay valid for scheduled certificates.  Every change to a
triangle's vertex set gives it a fresh stamp from a global clock.
"""
from __future__ import annotations

import math
import random
from enum import IntEnum
from typing import Iterator

from .kernel import WeightClass, incircle_sign, orient_sign
from .simplices import SimplexSet, canonical_edge, canonical_triangle

INPUT = int(WeightClass.INPUT)


class TriangulationError(ValueError):
    pass


class DuplicatePointError(TriangulationError):
    def __init__(self, x, y, existing: int):
        super().__init__(f"point ({x!r}, {y!r}) coincides with vertex {existing}")
        self.existing = existing


class OutsideHullError(TriangulationError):
    pass


class InvariantViolation(AssertionError):
    """A structural invariant does not hold; ``kind`` names it, ``where`` locates it."""

    def __init__(self, kind: str, where, detail: str = ""):
        super().__init__(f"{kind} at {where}" + (f": {detail}" if detail else ""))
        self.kind = kind
        self.where = where


class Containment(IntEnum):
    INTERIOR = 0
    EDGE = 1
    VERTEX = 2


class Triangulation:
    def __init__(self):
        self.x: list[float] = []
        self.y: list[float] = []
        self.kind: list[int] = []
        self.removed: list[bool] = []
        self.vtri: list[int] = []
        self.tv: list[int] = []
        self.tn: list[int] = []
        self.stamp: list[int] = []
        self.alive: list[bool] = []
        self.n_live = 0
        self.last = -1
        self._clock = 0

    # -- construction -------------------------------------------------

    @classmethod
    def from_box(cls, corners, kinds=None) -> "Triangulation":
        """Two-triangle Delaunay triangulation of four convex corners (any order).

        ``kinds`` optionally labels the corners (in the given order); the
        default is all box vertices.
        """
        pts = [(float(c[0]), float(c[1])) for c in corners]
        if len(pts) != 4 or len(set(pts)) != 4:
            raise TriangulationError("need four distinct corners")
        label = dict(zip(pts, kinds if kinds is not None else [WeightClass.BOX] * 4))
        # sort counterclockwise around the centroid, then check strict convexity
        cx = sum(p[0] for p in pts) / 4
        cy = sum(p[1] for p in pts) / 4
        pts.sort(key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        for i in range(4):
            a, b, c = pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]
            if orient_sign(a[0], a[1], b[0], b[1], c[0], c[1]) <= 0:
                raise TriangulationError("box corners are not in strictly convex position")
        tri = cls()
        for p in pts:
            tri._new_vertex(p[0], p[1], int(label[p]))
        t0 = tri._new_tri(0, 1, 2)
        t1 = tri._new_tri(0, 2, 3)
        tri.tn[3 * t0 + 1] = t1  # edge (2, 0) of t0 is opposite vertex 1
        tri.tn[3 * t1 + 2] = t0  # edge (0, 2) of t1 is opposite vertex 3
        tri._legalize([(t0, 1)])
        return tri

    @classmethod
    def from_triangle(cls, corners, kinds) -> "Triangulation":
        """Single triangle (corners in any order) with the given vertex kinds."""
        pts = [(float(c[0]), float(c[1])) for c in corners]
        if len(pts) != 3:
            raise TriangulationError("need three corners")
        o = orient_sign(*pts[0], *pts[1], *pts[2])
        if o == 0:
            raise TriangulationError("triangle corners are collinear")
        order = [0, 1, 2] if o > 0 else [0, 2, 1]
        tri = cls()
        for i in order:
            tri._new_vertex(pts[i][0], pts[i][1], int(kinds[i]))
        tri._new_tri(0, 1, 2)
        return tri

    def _new_vertex(self, x: float, y: float, kind: int) -> int:
        self.x.append(x)
        self.y.append(y)
        self.kind.append(kind)
        self.removed.append(False)
        self.vtri.append(-1)
        return len(self.x) - 1

    def _new_tri(self, a: int, b: int, c: int) -> int:
        t = len(self.stamp)
        self.tv.extend((a, b, c))
        self.tn.extend((-1, -1, -1))
        self._clock += 1
        self.stamp.append(self._clock)
        self.alive.append(True)
        self.n_live += 1
        self.vtri[a] = self.vtri[b] = self.vtri[c] = t
        self.last = t
        return t

    def _set_tri(self, t: int, a: int, b: int, c: int, na: int, nb: int, nc: int) -> None:
        base = 3 * t
        tv = self.tv
        tn = self.tn
        tv[base] = a
        tv[base + 1] = b
        tv[base + 2] = c
        tn[base] = na
        tn[base + 1] = nb
        tn[base + 2] = nc
        self._clock += 1
        self.stamp[t] = self._clock
        self.vtri[a] = self.vtri[b] = self.vtri[c] = t

    def _relink(self, n: int, old: int, new: int) -> None:
        """Make neighbor ``n`` point at ``new`` where it used to point at ``old``."""
        if n < 0:
            return
        tn = self.tn
        base = 3 * n
        if tn[base] == old:
            tn[base] = new
        elif tn[base + 1] == old:
            tn[base + 1] = new
        else:
            tn[base + 2] = new

    # -- queries --------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.x)

    def point(self, v: int) -> tuple[float, float]:
        return (self.x[v], self.y[v])

    def triangle(self, t: int) -> tuple[int, int, int]:
        return tuple(self.tv[3 * t : 3 * t + 3])

    def live_triangles(self) -> Iterator[int]:
        return (t for t, a in enumerate(self.alive) if a)

    def active_vertices(self) -> list[int]:
        return [v for v, r in enumerate(self.removed) if not r]

    def neighbor_index(self, u: int, t: int) -> int:
        base = 3 * u
        tn = self.tn
        if tn[base] == t:
            return 0
        if tn[base + 1] == t:
            return 1
        if tn[base + 2] == t:
            return 2
        raise InvariantViolation("neighbor-symmetry", (u, t))

    def edge_vertices(self, t: int, k: int) -> tuple[int, int]:
        base = 3 * t
        return self.tv[base + (k + 1) % 3], self.tv[base + (k + 2) % 3]

    def star(self, v: int) -> tuple[list[int], bool]:
        """Triangles around ``v`` in ccw order and whether ``v`` is on the hull.

        For hull vertices the list starts at the hull edge on the cw side.
        """
        tv = self.tv
        tn = self.tn
        start = self.vtri[v]
        t = start
        out = []
        while True:
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            out.append(t)
            nxt = tn[base + (k + 1) % 3]
            if nxt < 0:
                break
            if nxt == start:
                return out, False
            t = nxt
        # hull vertex: walk clockwise from the start to collect the rest
        t = start
        before = []
        while True:
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            prv = tn[base + (k + 2) % 3]
            if prv < 0:
                break
            before.append(prv)
            t = prv
        before.reverse()
        return before + out, True

    def neighbors(self, v: int) -> list[int]:
        """Delaunay neighbors of ``v`` in ccw order."""
        tris, hull = self.star(v)
        tv = self.tv
        out = []
        for t in tris:
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            out.append(tv[base + (k + 1) % 3])
        if hull:
            t = tris[-1]
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            out.append(tv[base + (k + 2) % 3])
        return out

    def vertex_degree(self, v: int) -> int:
        tris, hull = self.star(v)
        return len(tris) + (1 if hull else 0)

    def is_hull_vertex(self, v: int) -> bool:
        return self.star(v)[1]

    def interior_edge_refs(self) -> Iterator[tuple[int, int]]:
        """``(triangle, index)`` once per interior edge."""
        tn = self.tn
        for t, alive in enumerate(self.alive):
            if not alive:
                continue
            base = 3 * t
            for k in range(3):
                if tn[base + k] > t:
                    yield t, k

    def interior_edges(self) -> Iterator[tuple[int, int]]:
        for t, k in self.interior_edge_refs():
            yield canonical_edge(*self.edge_vertices(t, k))

    def hull_vertices(self) -> set[int]:
        out = set()
        tn = self.tn
        for t in self.live_triangles():
            base = 3 * t
            for k in range(3):
                if tn[base + k] < 0:
                    out.update(self.edge_vertices(t, k))
        return out

    def simplices(self) -> SimplexSet:
        tv = self.tv
        return SimplexSet.build(
            (tv[3 * t], tv[3 * t + 1], tv[3 * t + 2]) for t in self.live_triangles()
        )

    # -- point location -------------------------------------------------

    def locate(self, x: float, y: float, start: int = -1) -> tuple[int, Containment, int]:
        """Visibility walk to a triangle whose closure contains ``(x, y)``.

        Returns ``(t, containment, k)`` where ``k`` is the index of the edge
        (for EDGE) or vertex (for VERTEX) of ``t`` that holds the point.
        """
        if start < 0 or not self.alive[start]:
            start = self.last if self.last >= 0 and self.alive[self.last] else next(self.live_triangles())
        tv = self.tv
        tn = self.tn
        px = self.x
        py = self.y
        t = start
        prev = -1
        for _ in range(4 * len(self.alive) + 16):
            base = 3 * t
            moved = False
            for k in range(3):
                n = tn[base + k]
                if n == prev and prev >= 0:
                    continue
                p = tv[base + (k + 1) % 3]
                q = tv[base + (k + 2) % 3]
                if orient_sign(px[p], py[p], px[q], py[q], x, y) < 0:
                    if n < 0:
                        raise OutsideHullError(f"point ({x!r}, {y!r}) is outside the hull")
                    prev = t
                    t = n
                    moved = True
                    break
            if not moved:
                return self._classify(t, x, y)
        return self._locate_scan(x, y)

    def _classify(self, t: int, x: float, y: float) -> tuple[int, Containment, int]:
        base = 3 * t
        tv = self.tv
        px = self.x
        py = self.y
        zeros = []
        for k in range(3):
            p = tv[base + (k + 1) % 3]
            q = tv[base + (k + 2) % 3]
            s = orient_sign(px[p], py[p], px[q], py[q], x, y)
            if s < 0:
                return None
            if s == 0:
                zeros.append(k)
        if not zeros:
            return t, Containment.INTERIOR, -1
        if len(zeros) == 1:
            return t, Containment.EDGE, zeros[0]
        # on two edge lines: the shared vertex
        k = 3 - zeros[0] - zeros[1]
        return t, Containment.VERTEX, k

    def _locate_scan(self, x: float, y: float):
        for t in self.live_triangles():
            r = self._classify(t, x, y)
            if r is not None:
                return r
        raise OutsideHullError(f"point ({x!r}, {y!r}) is outside the hull")

    # -- insertion -------------------------------------------------------

    def insert_vertex(self, x: float, y: float, kind=WeightClass.STEINER, start: int = -1) -> int:
        """Insert a point and restore the Delaunay property at time ``0+``.

        Points on a hull edge are accepted (the edge is split); points outside
        the hull or on an existing vertex raise.
        """
        x = float(x)
        y = float(y)
        t, where, k = self.locate(x, y, start)
        if where == Containment.VERTEX:
            raise DuplicatePointError(x, y, self.tv[3 * t + k])
        v = self._new_vertex(x, y, int(kind))
        if where == Containment.INTERIOR:
            todo = self._split_interior(t, v)
        else:
            todo = self._split_edge(t, k, v)
        self._legalize(todo)
        self.last = self.vtri[v]
        return v

    def _split_interior(self, t: int, v: int) -> list[tuple[int, int]]:
        base = 3 * t
        a, b, c = self.tv[base : base + 3]
        na, nb, nc = self.tn[base : base + 3]
        t1 = self._new_tri(b, c, v)
        t2 = self._new_tri(c, a, v)
        self._set_tri(t, a, b, v, t1, t2, nc)
        self._set_tri(t1, b, c, v, t2, t, na)
        self._set_tri(t2, c, a, v, t, t1, nb)
        self._relink(na, t, t1)
        self._relink(nb, t, t2)
        return [(t, 2), (t1, 2), (t2, 2)]

    def _split_edge(self, t: int, k: int, v: int) -> list[tuple[int, int]]:
        base = 3 * t
        tv = self.tv
        tn = self.tn
        a = tv[base + k]
        b = tv[base + (k + 1) % 3]
        c = tv[base + (k + 2) % 3]
        tb = tn[base + (k + 1) % 3]
        tc = tn[base + (k + 2) % 3]
        u = tn[base + k]
        if u < 0:
            t1 = self._new_tri(a, v, c)
            self._set_tri(t, a, b, v, -1, t1, tc)
            self._set_tri(t1, a, v, c, -1, tb, t)
            self._relink(tb, t, t1)
            return [(t, 2), (t1, 1)]
        j = self.neighbor_index(u, t)
        ubase = 3 * u
        d = tv[ubase + j]
        ub = tn[ubase + (j + 2) % 3]  # opposite b in u = (d, c, b)
        uc = tn[ubase + (j + 1) % 3]  # opposite c
        t1 = self._new_tri(a, v, c)
        u1 = self._new_tri(d, v, b)
        self._set_tri(t, a, b, v, u1, t1, tc)
        self._set_tri(t1, a, v, c, u, tb, t)
        self._set_tri(u, d, c, v, t1, u1, ub)
        self._set_tri(u1, d, v, b, t, uc, u)
        self._relink(tb, t, t1)
        self._relink(uc, u, u1)
        return [(t, 2), (t1, 1), (u, 2), (u1, 1)]

    def _legalize(self, stack: list[tuple[int, int]]) -> None:
        tv = self.tv
        tn = self.tn
        px = self.x
        py = self.y
        kd = self.kind
        while stack:
            t, k = stack.pop()
            base = 3 * t
            u = tn[base + k]
            if u < 0:
                continue
            v = tv[base + k]
            b = tv[base + (k + 1) % 3]
            c = tv[base + (k + 2) % 3]
            j = self.neighbor_index(u, t)
            d = tv[3 * u + j]
            s = incircle_sign(
                px[v], py[v], px[b], py[b], px[c], py[c], px[d], py[d],
                kd[v] == INPUT, kd[b] == INPUT, kd[c] == INPUT, kd[d] == INPUT,
                v, b, c, d,
            )
            if s < 0:
                t, k = self.flip22(t, k)
                # t = (v, b, d) and the partner (v, d, c) both keep v at index 0
                stack.append((t, 0))
                stack.append((tn[3 * t + 1], 0))

    # -- flips --------------------------------------------------------------

    def flip22(self, t: int, i: int) -> tuple[int, int]:
        """Swap the diagonal opposite vertex ``i`` of ``t``; returns the new edge ref."""
        tv = self.tv
        tn = self.tn
        base = 3 * t
        u = tn[base + i]
        if u < 0:
            raise TriangulationError("cannot flip a hull edge")
        a = tv[base + i]
        b = tv[base + (i + 1) % 3]
        c = tv[base + (i + 2) % 3]
        tb = tn[base + (i + 1) % 3]
        tc = tn[base + (i + 2) % 3]
        j = self.neighbor_index(u, t)
        ubase = 3 * u
        d = tv[ubase + j]
        uc = tn[ubase + (j + 1) % 3]  # u = (d, c, b): opposite c is edge (b, d)
        ub = tn[ubase + (j + 2) % 3]
        px = self.x
        py = self.y
        if (
            orient_sign(px[a], py[a], px[b], py[b], px[d], py[d]) <= 0
            or orient_sign(px[a], py[a], px[d], py[d], px[c], py[c]) <= 0
        ):
            raise TriangulationError("quadrilateral is not strictly convex")
        self._set_tri(t, a, b, d, uc, u, tc)
        self._set_tri(u, a, d, c, ub, tb, t)
        self._relink(uc, u, t)
        self._relink(tb, t, u)
        self.last = t
        return t, 1

    def flip31(self, v: int) -> int:
        """Remove interior vertex ``v`` of degree three; returns the merged triangle."""
        if self.removed[v]:
            raise TriangulationError(f"vertex {v} already removed")
        tris, hull = self.star(v)
        if hull:
            raise TriangulationError(f"vertex {v} is on the hull")
        if len(tris) != 3:
            raise TriangulationError(f"vertex {v} has degree {len(tris)}, expected 3")
        tv = self.tv
        tn = self.tn
        outer = []
        corners = []
        for t in tris:
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            corners.append(tv[base + (k + 1) % 3])
            outer.append(tn[base + k])
        p, q, r = corners
        t0, t1, t2 = tris
        # ccw star order: t0 = (v, p, q), t1 = (v, q, r), t2 = (v, r, p)
        self._set_tri(t0, p, q, r, outer[1], outer[2], outer[0])
        self._relink(outer[1], t1, t0)
        self._relink(outer[2], t2, t0)
        for dead in (t1, t2):
            self.alive[dead] = False
            self._clock += 1
            self.stamp[dead] = self._clock
            self.n_live -= 1
        self.removed[v] = True
        self.vtri[v] = -1
        self.last = t0
        return t0

    def flip42(self, v: int) -> tuple[int, int]:
        """Remove interior vertex ``v`` of degree four lying on the segment between two neighbors.

        The four triangles around ``v`` become two sharing that segment as
        their diagonal; returns ``(t, k)`` addressing the diagonal.
        """
        if self.removed[v]:
            raise TriangulationError(f"vertex {v} already removed")
        tris, hull = self.star(v)
        if hull:
            raise TriangulationError(f"vertex {v} is on the hull")
        if len(tris) != 4:
            raise TriangulationError(f"vertex {v} has degree {len(tris)}, expected 4")
        tv = self.tv
        tn = self.tn
        corners = []
        outer = []
        for t in tris:
            base = 3 * t
            k = 0 if tv[base] == v else (1 if tv[base + 1] == v else 2)
            corners.append(tv[base + (k + 1) % 3])
            outer.append(tn[base + k])
        px, py = self.x, self.y

        def on_line(i: int, j: int) -> bool:
            p, q = corners[i], corners[j]
            return orient_sign(px[p], py[p], px[v], py[v], px[q], py[q]) == 0

        if not on_line(0, 2):
            if not on_line(1, 3):
                raise TriangulationError(f"vertex {v} is not between two of its neighbors")
            tris = tris[1:] + tris[:1]
            corners = corners[1:] + corners[:1]
            outer = outer[1:] + outer[:1]
        p0, p1, p2, p3 = corners
        t0, t1, t2, t3 = tris
        # ccw star order: t_i = (v, p_i, p_i+1); outer[i] lies across p_i p_i+1
        self._set_tri(t0, p0, p1, p2, outer[1], t2, outer[0])
        self._set_tri(t2, p2, p3, p0, outer[3], t0, outer[2])
        self._relink(outer[1], t1, t0)
        self._relink(outer[3], t3, t2)
        for dead in (t1, t3):
            self.alive[dead] = False
            self._clock += 1
            self.stamp[dead] = self._clock
            self.n_live -= 1
        self.removed[v] = True
        self.vtri[v] = -1
        self.last = t0
        return t0, 1

    # -- checking ---------------------------------------------------------------

    def validate(self, tiling_samples: int = 0, seed: int = 0) -> None:
        """Raise ``InvariantViolation`` describing the first broken invariant."""
        tv = self.tv
        tn = self.tn
        px = self.x
        py = self.y
        referenced = set()
        n_live = 0
        for t, alive in enumerate(self.alive):
            if not alive:
                continue
            n_live += 1
            base = 3 * t
            a, b, c = tv[base : base + 3]
            for v in (a, b, c):
                if self.removed[v]:
                    raise InvariantViolation("removed-vertex-referenced", t, f"vertex {v}")
                referenced.add(v)
            if orient_sign(px[a], py[a], px[b], py[b], px[c], py[c]) <= 0:
                raise InvariantViolation("orientation", t)
            for k in range(3):
                u = tn[base + k]
                if u < 0:
                    continue
                if not self.alive[u]:
                    raise InvariantViolation("dead-neighbor", (t, k))
                if tn[3 * u : 3 * u + 3].count(t) != 1:
                    raise InvariantViolation("neighbor-symmetry", (t, k), f"neighbor {u}")
                j = self.neighbor_index(u, t)
                e1 = set(self.edge_vertices(t, k))
                e2 = set(self.edge_vertices(u, j))
                if e1 != e2:
                    raise InvariantViolation("neighbor-edge-mismatch", (t, k))
        if n_live != self.n_live:
            raise InvariantViolation("live-count", n_live, f"tracked {self.n_live}")
        for v, r in enumerate(self.removed):
            if r:
                continue
            if v not in referenced:
                raise InvariantViolation("unreferenced-vertex", v)
            t = self.vtri[v]
            if t < 0 or not self.alive[t] or v not in tv[3 * t : 3 * t + 3]:
                raise InvariantViolation("vertex-triangle-link", v)
        hull = self.hull_vertices()
        n_active = len(referenced)
        expected = 2 * (n_active - len(hull)) + len(hull) - 2
        if n_live != expected:
            raise InvariantViolation("euler", n_live, f"expected {expected}")
        if tiling_samples:
            self._check_tiling(tiling_samples, seed)

    def _check_tiling(self, samples: int, seed: int) -> None:
        rng = random.Random(seed)
        live = list(self.live_triangles())
        tv = self.tv
        px = self.x
        py = self.y
        for _ in range(samples):
            t = rng.choice(live)
            a, b, c = tv[3 * t : 3 * t + 3]
            w = [rng.random() + 1e-3 for _ in range(3)]
            s = sum(w)
            x = (w[0] * px[a] + w[1] * px[b] + w[2] * px[c]) / s
            y = (w[0] * py[a] + w[1] * py[b] + w[2] * py[c]) / s
            hits = 0
            on_boundary = False
            for u in live:
                p, q, r = tv[3 * u : 3 * u + 3]
                s1 = orient_sign(px[p], py[p], px[q], py[q], x, y)
                s2 = orient_sign(px[q], py[q], px[r], py[r], x, y)
                s3 = orient_sign(px[r], py[r], px[p], py[p], x, y)
                if s1 >= 0 and s2 >= 0 and s3 >= 0:
                    if s1 == 0 or s2 == 0 or s3 == 0:
                        on_boundary = True
                    hits += 1
            if not on_boundary and hits != 1:
                raise InvariantViolation("tiling", (x, y), f"covered {hits} times")

    def canonical_triangles(self) -> list[tuple[int, int, int]]:
        tv = self.tv
        return sorted(canonical_triangle(*tv[3 * t : 3 * t + 3]) for t in self.live_triangles())
