"""Kinetic removal of Steiner points by time-ordered flips.

Input points gain weight ``sqrt(t)`` while every other vertex keeps weight
zero.  Each interior edge carries a certificate: the exact time at which its
four vertices become orthogonal to a common ball.  Certificates live in a
min-heap keyed by ``(time, edge)`` and are invalidated lazily through the
triangle stamps recorded when they were scheduled.
"""
from __future__ import annotations

import heapq
import math
import time
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, NamedTuple

from .complex import Triangulation
from .kernel import WeightClass, orient_sign, power_sign, quad_coefficients
from .simplices import SimplexSet, canonical_edge

INPUT = int(WeightClass.INPUT)


class InteriorSteinerError(AssertionError):
    """A non-input vertex survived the flip loop in the interior of the hull."""


class FlipEvent(NamedTuple):
    time: Fraction
    edge: tuple[int, int]
    stamps: tuple[tuple[int, int], tuple[int, int]]


class StepOutcome(Enum):
    FLIP22 = "flip22"
    FLIP31 = "flip31"
    FLIP42 = "flip42"
    STALE = "stale"
    EXHAUSTED = "exhausted"


@dataclass
class RunStats:
    n: int = 0
    m: int = 0
    steiner_count: int = 0
    flips_22: int = 0
    flips_31: int = 0
    flips_42: int = 0
    potential_flips_seen: int = 0
    seeded: int = 0
    scheduled: int = 0
    stale_pops: int = 0
    anomalies: int = 0
    heap_peak: int = 0
    f: int = 0
    spread: float = 1.0
    scaffolding_count: int = 0
    wall_time: float = 0.0

    @property
    def flips(self) -> int:
        return self.flips_22 + self.flips_31 + self.flips_42

    def as_dict(self) -> dict:
        return asdict(self)


class FlipHeap:
    """Min-heap of events ordered by ``(time, edge, stamps)``.

    Entries carry the correctly rounded float of the time in front; rounding
    is monotone, so exact Fraction comparisons only happen on float ties.
    """

    def __init__(self):
        self._items: list[tuple[float, FlipEvent]] = []
        self.peak = 0

    def __len__(self) -> int:
        return len(self._items)

    def push(self, ev: FlipEvent) -> None:
        try:
            key = float(ev.time)
        except OverflowError:
            # nearly degenerate quads can fail astronomically late
            key = math.inf
        heapq.heappush(self._items, (key, ev))
        if len(self._items) > self.peak:
            self.peak = len(self._items)

    def pop(self) -> FlipEvent:
        return heapq.heappop(self._items)[1]

    def peek(self) -> FlipEvent | None:
        return self._items[0][1] if self._items else None


class KineticState:
    def __init__(self, tri: Triangulation, trace: Callable[[dict], None] | None = None):
        self.tri = tri
        self.t_now = Fraction(0)
        self.heap = FlipHeap()
        self.stats = RunStats()
        self.trace = trace
        self.seeded = False
        self._start_vertices = sum(1 for r in tri.removed if not r)


def certificate(state: KineticState, t: int, k: int) -> FlipEvent | None:
    """Event for the interior edge opposite vertex ``k`` of triangle ``t``, if it ever fails."""
    tri = state.tri
    tv = tri.tv
    base = 3 * t
    u = tri.tn[base + k]
    if u < 0:
        raise ValueError("hull edges carry no certificate")
    a = tv[base + k]
    b = tv[base + (k + 1) % 3]
    c = tv[base + (k + 2) % 3]
    d = tv[3 * u + tri.neighbor_index(u, t)]
    kind = tri.kind
    flags = (kind[a] == INPUT, kind[b] == INPUT, kind[c] == INPUT, kind[d] == INPUT)
    n_in = sum(flags)
    if n_in == 0 or n_in == 4:
        # a common weight shift cancels: the determinant does not depend on t
        return None
    px, py = tri.x, tri.y
    _, alpha, beta, den = quad_coefficients(
        (px[a], px[b], px[c], px[d]), (py[a], py[b], py[c], py[d]), flags
    )
    if alpha >= 0:
        return None
    root = Fraction(beta, -alpha * den * den)
    if root < state.t_now:
        # the edge is already illegal; cannot happen while the complex is regular
        state.stats.anomalies += 1
        return None
    return FlipEvent(root, canonical_edge(b, c), ((t, tri.stamp[t]), (u, tri.stamp[u])))


def _schedule(state: KineticState, t: int, k: int) -> None:
    if state.tri.tn[3 * t + k] < 0:
        return
    state.stats.potential_flips_seen += 1
    ev = certificate(state, t, k)
    if ev is not None:
        state.stats.scheduled += 1
        state.heap.push(ev)


def seed(state: KineticState) -> None:
    """Attempt a certificate for every interior edge of the current complex."""
    if state.seeded or len(state.heap):
        raise RuntimeError("state already seeded")
    for t, k in list(state.tri.interior_edge_refs()):
        _schedule(state, t, k)
    state.stats.seeded = state.stats.potential_flips_seen
    state.seeded = True


def step(state: KineticState) -> StepOutcome:
    """Pop the earliest certificate and perform its flip if it is still current."""
    heap = state.heap
    if not len(heap):
        return StepOutcome.EXHAUSTED
    ev = heap.pop()
    tri = state.tri
    (t, st), (u, su) = ev.stamps
    if not (tri.alive[t] and tri.alive[u] and tri.stamp[t] == st and tri.stamp[u] == su):
        state.stats.stale_pops += 1
        return StepOutcome.STALE
    state.t_now = ev.time
    k = tri.neighbor_index(t, u)
    tv = tri.tv
    base = 3 * t
    a = tv[base + k]
    b = tv[base + (k + 1) % 3]
    c = tv[base + (k + 2) % 3]
    d = tv[3 * u + tri.neighbor_index(u, t)]
    px, py = tri.x, tri.y
    at_b = orient_sign(px[a], py[a], px[b], py[b], px[d], py[d])
    at_c = orient_sign(px[a], py[a], px[d], py[d], px[c], py[c])
    if at_b > 0 and at_c > 0:
        t, _ = tri.flip22(t, k)
        u = tri.tn[3 * t + 1]
        state.stats.flips_22 += 1
        _emit(state, "flip22", (b, c), (a, d))
        for tt, kk in ((t, 1), (t, 0), (t, 2), (u, 0), (u, 1)):
            _schedule(state, tt, kk)
        return StepOutcome.FLIP22
    if at_b == 0 or at_c == 0:
        return _remove_collinear(state, b if at_b == 0 else c)
    if at_b < 0:
        reflex = b
    elif at_c < 0:
        reflex = c
    else:
        state.stats.anomalies += 1
        state.stats.stale_pops += 1
        return StepOutcome.STALE
    if tri.kind[reflex] == INPUT or tri.vertex_degree(reflex) != 3 or tri.is_hull_vertex(reflex):
        state.stats.anomalies += 1
        state.stats.stale_pops += 1
        return StepOutcome.STALE
    nbrs = tri.neighbors(reflex)
    t = tri.flip31(reflex)
    state.stats.flips_31 += 1
    _emit(state, "flip31", (reflex,), tuple(nbrs))
    for kk in range(3):
        _schedule(state, t, kk)
    return StepOutcome.FLIP31


def _remove_collinear(state: KineticState, v: int) -> StepOutcome:
    """Remove ``v``, which lies on the segment between two of its neighbors.

    Its cell collapses to a segment rather than a point, so ``v`` has degree
    four and leaves by a 4-2 flip; the new diagonal is then made regular at
    the current time.
    """
    tri = state.tri
    if tri.kind[v] == INPUT or tri.vertex_degree(v) != 4 or tri.is_hull_vertex(v):
        state.stats.anomalies += 1
        state.stats.stale_pops += 1
        return StepOutcome.STALE
    nbrs = tri.neighbors(v)
    t, k = tri.flip42(v)
    state.stats.flips_42 += 1
    _emit(state, "flip42", (v,), canonical_edge(tri.tv[3 * t + (k + 1) % 3], tri.tv[3 * t + (k + 2) % 3]))
    u = tri.tn[3 * t + k]
    tv = tri.tv
    base = 3 * t
    a = tv[base + k]
    b = tv[base + (k + 1) % 3]
    c = tv[base + (k + 2) % 3]
    d = tv[3 * u + tri.neighbor_index(u, t)]
    q = (a, b, c, d)
    px, py = tri.x, tri.y
    kind = tri.kind
    illegal = power_sign(
        tuple(px[w] for w in q), tuple(py[w] for w in q), tuple(kind[w] == INPUT for w in q), q, state.t_now
    ) < 0
    convex = (
        orient_sign(px[a], py[a], px[b], py[b], px[d], py[d]) > 0
        and orient_sign(px[a], py[a], px[d], py[d], px[c], py[c]) > 0
    )
    if illegal and convex:
        t, _ = tri.flip22(t, k)
        state.stats.flips_22 += 1
        _emit(state, "flip22", (b, c), (a, d))
        u = tri.tn[3 * t + 1]
        edges = ((t, 1), (t, 0), (t, 2), (u, 0), (u, 1))
    else:
        # t = (p0, p1, p2) and u = (p2, p3, p0) share the diagonal at index 1
        edges = ((t, 1), (t, 0), (t, 2), (u, 0), (u, 2))
    for tt, kk in edges:
        _schedule(state, tt, kk)
    return StepOutcome.FLIP42


def _emit(state: KineticState, kind: str, removed, added) -> None:
    if state.trace is not None:
        t = state.t_now
        state.trace(
            {
                "time": f"{t.numerator}/{t.denominator}",
                "type": kind,
                "removed": list(removed),
                "added": list(added),
            }
        )


def check_only_boundary_steiner(tri: Triangulation) -> list[int]:
    """Non-input vertices that are still present but not on the hull."""
    return [
        v
        for v in tri.active_vertices()
        if tri.kind[v] != INPUT and not tri.is_hull_vertex(v)
    ]


def run(state: KineticState, on_step: Callable[[KineticState, StepOutcome], None] | None = None) -> RunStats:
    """Process events until the heap is exhausted, then check that only hull Steiner points remain."""
    if not state.seeded:
        seed(state)
    started = time.perf_counter()
    while True:
        outcome = step(state)
        if on_step is not None:
            on_step(state, outcome)
        if outcome is StepOutcome.EXHAUSTED:
            break
    stats = state.stats
    stats.heap_peak = state.heap.peak
    stats.wall_time += time.perf_counter() - started
    remaining = sum(1 for r in state.tri.removed if not r)
    if remaining > state._start_vertices:
        raise AssertionError("vertex count grew during the kinetic phase")
    bad = check_only_boundary_steiner(state.tri)
    if bad:
        raise InteriorSteinerError(f"interior non-input vertices survived: {bad[:10]}")
    return stats


def postprocess(state: KineticState) -> SimplexSet:
    """Drop every non-input vertex with its incident simplices.

    Returns the remaining complex over vertex ids and records the number of
    removed simplices and the output face count in the stats.
    """
    tri = state.tri
    bad = check_only_boundary_steiner(tri)
    if bad:
        raise InteriorSteinerError(f"interior non-input vertices survived: {bad[:10]}")
    full = tri.simplices()
    keep = [v for v in tri.active_vertices() if tri.kind[v] == INPUT]
    out = full.induced(keep)
    state.stats.scaffolding_count = len(full) - len(out)
    state.stats.f = len(out)
    return out
