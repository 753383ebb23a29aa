import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meshvoronoi.complex import (
    Containment,
    DuplicatePointError,
    InvariantViolation,
    OutsideHullError,
    Triangulation,
    TriangulationError,
)
from meshvoronoi.kernel import WeightClass
from meshvoronoi.oracle import brute_delaunay, brute_weighted_delaunay, verify_equal

from .conftest import BOX, random_points


def all_points(tri):
    return [(tri.x[v], tri.y[v]) for v in range(tri.n_vertices)]


def test_box_has_two_triangles():
    tri = Triangulation.from_box(BOX)
    tri.validate()
    assert len(list(tri.live_triangles())) == 2
    assert tri.hull_vertices() == {0, 1, 2, 3}
    assert len(list(tri.interior_edges())) == 1


def test_box_rejects_bad_corners():
    with pytest.raises(TriangulationError):
        Triangulation.from_box([(0, 0), (1, 0), (2, 0), (0, 1)])
    with pytest.raises(TriangulationError):
        Triangulation.from_box([(0, 0), (1, 0), (1, 0), (0, 1)])


def test_insert_center_of_box():
    tri = Triangulation.from_box(BOX)
    v = tri.insert_vertex(0.0, 0.0, WeightClass.INPUT)
    tri.validate()
    # the center lies on the diagonal, so it splits both triangles
    assert tri.vertex_degree(v) == 4
    assert sorted(tri.neighbors(v)) == [0, 1, 2, 3]


def test_insert_on_hull_edge():
    tri = Triangulation.from_box(BOX)
    v = tri.insert_vertex(3.0, -10.0)
    tri.validate()
    assert tri.is_hull_vertex(v)
    assert tri.hull_vertices() == {0, 1, 2, 3, v}


def test_insert_errors():
    tri = Triangulation.from_box(BOX)
    tri.insert_vertex(1.0, 2.0)
    with pytest.raises(DuplicatePointError):
        tri.insert_vertex(1.0, 2.0)
    with pytest.raises(DuplicatePointError):
        tri.insert_vertex(10.0, 10.0)
    with pytest.raises(OutsideHullError):
        tri.insert_vertex(11.0, 0.0)


def test_locate_classifies():
    tri = Triangulation.from_box(BOX)
    t, where, _ = tri.locate(1.0, 3.0)
    assert where == Containment.INTERIOR
    t, where, k = tri.locate(-10.0, -10.0)
    assert where == Containment.VERTEX
    assert tri.tv[3 * t + k] == 0 or (tri.x[tri.tv[3 * t + k]], tri.y[tri.tv[3 * t + k]]) == (-10.0, -10.0)
    _, where, _ = tri.locate(0.0, -10.0)
    assert where == Containment.EDGE


@pytest.mark.parametrize("seed", range(4))
def test_incremental_matches_oracle(boxed, seed):
    tri, _ = boxed(random_points(150, seed))
    tri.validate(tiling_samples=200, seed=seed)
    assert verify_equal(tri, brute_delaunay(all_points(tri))).ok


def test_cocircular_grid_matches_oracle(boxed):
    pts = [(float(i), float(j)) for i in range(-3, 4) for j in range(-3, 4)]
    tri, _ = boxed(pts)
    tri.validate()
    assert verify_equal(tri, brute_delaunay(all_points(tri))).ok


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=30, unique=True))
def test_integer_lattice_inserts_match_oracle(pts):
    # lattice points create many collinear and cocircular ties; with mixed
    # kinds the tie-break looks at the time derivative first
    for kind in (WeightClass.INPUT, WeightClass.STEINER):
        tri = Triangulation.from_box(BOX)
        for x, y in pts:
            tri.insert_vertex(x, y, kind)
        tri.validate()
        labeled = [((tri.x[v], tri.y[v]), tri.kind[v]) for v in range(tri.n_vertices)]
        assert verify_equal(tri, brute_weighted_delaunay(labeled, 0)).ok
        if kind == WeightClass.STEINER:
            assert verify_equal(tri, brute_delaunay(all_points(tri))).ok


def test_flip22_round_trip(boxed):
    tri, _ = boxed(random_points(20, 3))
    t, k = next(tri.interior_edge_refs())
    before = tri.simplices()
    a = tri.tv[3 * t + k]
    t2, k2 = tri.flip22(t, k)
    tri.validate()
    assert tri.simplices() != before
    assert tri.tv[3 * t2] == a
    tri.flip22(t2, k2)
    tri.validate()
    assert tri.simplices() == before


def test_flip22_rejects_hull_edge():
    tri = Triangulation.from_box(BOX)
    t = next(tri.live_triangles())
    k = next(k for k in range(3) if tri.tn[3 * t + k] < 0)
    with pytest.raises(TriangulationError):
        tri.flip22(t, k)


def test_flip31_removes_degree_three_vertex():
    # a flat rhombus; the square box is cocircular and would give degree 4
    tri = Triangulation.from_box([(0, 0), (10, -3), (20, 0), (10, 3)])
    v = tri.insert_vertex(5.0, 0.2)
    assert tri.vertex_degree(v) == 3
    stamps = list(tri.stamp)
    t = tri.flip31(v)
    tri.validate()
    assert tri.removed[v]
    assert v not in tri.active_vertices()
    assert tri.alive[t] and tri.stamp[t] != stamps[t]
    assert len(list(tri.live_triangles())) == 2
    with pytest.raises(TriangulationError):
        tri.flip31(v)


def test_flip31_rejects_other_degrees(boxed):
    tri, ids = boxed([(0.0, 0.0)])
    with pytest.raises(TriangulationError):
        tri.flip31(ids[0])
    with pytest.raises(TriangulationError):
        tri.flip31(0)


def test_flip42_removes_vertex_on_a_segment():
    tri = Triangulation.from_box([(0, 0), (10, -3), (20, 0), (10, 3)])
    v = tri.insert_vertex(10.0, 0.0)  # on the box diagonal, which is split
    assert tri.vertex_degree(v) == 4
    t, k = tri.flip42(v)
    tri.validate()
    assert tri.removed[v]
    assert len(list(tri.live_triangles())) == 2
    u = tri.tn[3 * t + k]
    assert u >= 0 and tri.alive[u]
    shared = set(tri.tv[3 * t : 3 * t + 3]) & set(tri.tv[3 * u : 3 * u + 3])
    assert len(shared) == 2 and tri.tv[3 * t + k] not in shared


def test_flip42_rejects_vertex_off_every_segment():
    tri = Triangulation.from_box([(0, 0), (10, -3), (20, 0), (10, 3)])
    v = tri.insert_vertex(10.0, 0.0)
    w = tri.insert_vertex(12.0, 0.5)
    with pytest.raises(TriangulationError):
        tri.flip42(w)
    assert not tri.removed[v]


def test_validate_detects_corruption(boxed):
    tri, _ = boxed(random_points(10, 0))
    t = next(tri.live_triangles())
    tri.tv[3 * t], tri.tv[3 * t + 1] = tri.tv[3 * t + 1], tri.tv[3 * t]
    with pytest.raises(InvariantViolation):
        tri.validate()


def test_stamps_change_on_rewrite(boxed):
    tri, _ = boxed(random_points(5, 1))
    before = list(tri.stamp)
    tri.insert_vertex(0.1, 0.2)
    changed = [t for t in range(len(before)) if tri.stamp[t] != before[t]]
    assert changed
    assert len(set(tri.stamp)) == len(tri.stamp)
