from fractions import Fraction

import pytest

from meshvoronoi.complex import Triangulation
from meshvoronoi.kernel import WeightClass, flip_time
from meshvoronoi.kinetic import (
    FlipEvent,
    FlipHeap,
    KineticState,
    InteriorSteinerError,
    StepOutcome,
    certificate,
    postprocess,
    run,
    seed,
    step,
)
from meshvoronoi.mesher import refine
from meshvoronoi.oracle import brute_delaunay, verify_equal
from meshvoronoi.pipeline import run_with_agreement

from .conftest import BOX, random_points

I, S = WeightClass.INPUT, WeightClass.STEINER
A, B, Q1, Q2 = (0, 0), (2, 0), (1, 0.5), (1, -1)


def quad_state(trace=None):
    tri = Triangulation.from_box([A, B, Q1, Q2], [I, I, S, S])
    ids = {(tri.x[v], tri.y[v]): v for v in range(4)}
    return KineticState(tri, trace), {k: ids[(float(p[0]), float(p[1]))] for k, p in zip("ab12", (A, B, Q1, Q2))}


def test_quad_certificate_at_half():
    state, v = quad_state()
    assert sorted(state.tri.interior_edges()) == [tuple(sorted((v["1"], v["2"])))]
    t, k = next(state.tri.interior_edge_refs())
    ev = certificate(state, t, k)
    assert ev.time == Fraction(1, 2)
    assert ev.edge == tuple(sorted((v["1"], v["2"])))


def test_quad_flips_once_at_half():
    records = []
    state, v = quad_state(records.append)
    seed(state)
    assert state.stats.potential_flips_seen == 1
    assert step(state) is StepOutcome.FLIP22
    assert state.t_now == Fraction(1, 2)
    assert sorted(state.tri.interior_edges()) == [tuple(sorted((v["a"], v["b"])))]
    assert step(state) is StepOutcome.EXHAUSTED
    assert len(records) == 1
    rec = records[0]
    assert (rec["time"], rec["type"]) == ("1/2", "flip22")
    assert sorted(rec["removed"]) == sorted((v["1"], v["2"]))
    assert sorted(rec["added"]) == sorted((v["a"], v["b"]))


def test_quad_run_and_postprocess():
    state, v = quad_state()
    stats = run(state)
    assert stats.flips_22 + stats.flips_31 == 1
    assert state.tri.is_hull_vertex(v["1"]) and state.tri.is_hull_vertex(v["2"])
    out = postprocess(state)
    assert out.vertices == {v["a"], v["b"]}
    assert out.edges == {tuple(sorted((v["a"], v["b"])))}
    assert not out.triangles
    assert stats.f == 3
    # 4 vertices + 5 edges + 2 triangles, minus the 3 kept
    assert stats.scaffolding_count == 8


def test_all_box_complex_schedules_nothing():
    state = KineticState(Triangulation.from_box(BOX))
    seed(state)
    assert state.stats.potential_flips_seen == 1
    assert len(state.heap) == 0


def test_all_input_quad_has_no_certificate():
    tri = Triangulation.from_box([A, B, Q1, Q2], [I] * 4)
    state = KineticState(tri)
    t, k = next(tri.interior_edge_refs())
    assert certificate(state, t, k) is None


def test_negative_root_has_no_certificate():
    tri = Triangulation.from_box([(0, 0), (1, 0), (0.5, 1), (0.5, -1)], [I, I, I, S])
    state = KineticState(tri)
    t, k = next(tri.interior_edge_refs())
    assert certificate(state, t, k) is None


def test_certificate_rejects_hull_edge():
    state, _ = quad_state()
    t = next(state.tri.live_triangles())
    k = next(k for k in range(3) if state.tri.tn[3 * t + k] < 0)
    with pytest.raises(ValueError):
        certificate(state, t, k)


def test_steiner_in_input_triangle_flips_out():
    corners = [(0, 0), (1, 0), (0, 1)]
    tri = Triangulation.from_triangle(corners, [I] * 3)
    s = tri.insert_vertex(0.1, 0.1, S)
    expected = flip_time(*[(p, I) for p in corners], ((0.1, 0.1), S))
    assert expected.is_event
    state = KineticState(tri)
    seed(state)
    # all three spokes carry the same certificate; the first one removes s
    assert len(state.heap) == 3
    assert step(state) is StepOutcome.FLIP31
    assert state.t_now == expected.time
    assert tri.removed[s]
    tri.validate()
    assert step(state) is StepOutcome.STALE
    assert step(state) is StepOutcome.STALE
    assert step(state) is StepOutcome.EXHAUSTED
    assert state.stats.stale_pops == 2


def test_seed_twice_rejected():
    state, _ = quad_state()
    seed(state)
    with pytest.raises(RuntimeError):
        seed(state)


def test_heap_orders_by_time_then_edge():
    heap = FlipHeap()
    heap.push(FlipEvent(Fraction(1, 2), (3, 4), ((0, 0), (1, 0))))
    heap.push(FlipEvent(Fraction(1, 3), (5, 6), ((0, 0), (1, 0))))
    heap.push(FlipEvent(Fraction(1, 2), (1, 9), ((0, 0), (1, 0))))
    assert heap.peak == 3
    assert [heap.pop().edge for _ in range(3)] == [(5, 6), (1, 9), (3, 4)]


def test_all_input_mesh_has_no_flips():
    tri = Triangulation.from_box(BOX, [I] * 4)
    for x, y in random_points(30, 5):
        tri.insert_vertex(x, y, I)
    state = KineticState(tri)
    stats = run(state)
    assert stats.flips_22 == stats.flips_31 == 0


def test_interior_steiner_vertex_is_detected():
    tri = Triangulation.from_triangle([(0, 0), (1, 0), (0, 1)], [I] * 3)
    tri.insert_vertex(0.1, 0.1, S)
    state = KineticState(tri)
    with pytest.raises(InteriorSteinerError):
        postprocess(state)


@pytest.mark.parametrize("seed_", range(5))
def test_random_instances_end_at_delaunay(seed_):
    pts = random_points(40, seed_)
    mesh = refine(pts)
    state = KineticState(mesh.triangulation)
    before = sum(1 for r in mesh.triangulation.removed if not r)
    stats = run(state)
    after = sum(1 for r in mesh.triangulation.removed if not r)
    mesh.triangulation.validate()
    assert after < before
    assert stats.flips_31 == before - after
    assert stats.flips_22 + stats.flips_31 <= stats.potential_flips_seen
    assert stats.anomalies == 0
    out = postprocess(state).relabel({v: i for i, v in enumerate(mesh.input_ids)})
    assert verify_equal(out, brute_delaunay(pts)).ok


def test_heap_handles_times_beyond_float_range():
    heap = FlipHeap()
    huge = Fraction(10**400, 3)
    heap.push(FlipEvent(huge + 1, (0, 1), ((0, 0), (1, 0))))
    heap.push(FlipEvent(huge, (2, 3), ((0, 0), (1, 0))))
    heap.push(FlipEvent(Fraction(5), (4, 5), ((0, 0), (1, 0))))
    assert [heap.pop().time for _ in range(3)] == [5, huge, huge + 1]


def test_steiner_vertex_on_a_segment_leaves_by_4_2_flip():
    # the middle Steiner point sits exactly between the other two, so its
    # cell collapses to a segment and it has degree four when it vanishes
    tri = Triangulation.from_box([(-8, -8), (8, -8), (8, 8), (-8, 8)])
    for p in [(-1.7, -1.7), (-4.6, -2.3), (-3.0, 5.1)]:
        tri.insert_vertex(*p, WeightClass.INPUT)
    tri.insert_vertex(0.0, 0.8)
    tri.insert_vertex(0.0, -0.8)
    tri.insert_vertex(0.0, 0.0)
    state = KineticState(tri)
    seed(state)
    assert run_with_agreement(state) > 0
    assert state.stats.flips_42 == 1
    assert state.stats.anomalies == 0
    tri.validate()
