import random

import pytest

from meshvoronoi.complex import Triangulation
from meshvoronoi.kernel import WeightClass

BOX = [(-10.0, -10.0), (10.0, -10.0), (10.0, 10.0), (-10.0, 10.0)]


def random_points(n, seed, lo=-5.0, hi=5.0):
    rng = random.Random(seed)
    return [(rng.uniform(lo, hi), rng.uniform(lo, hi)) for _ in range(n)]


@pytest.fixture
def boxed():
    """Factory: triangulation of BOX with the given points inserted as inputs."""

    def make(points, kind=WeightClass.INPUT):
        tri = Triangulation.from_box(BOX)
        ids = [tri.insert_vertex(x, y, kind) for x, y in points]
        return tri, ids

    return make
