import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from trivisit.geom_core import Point2, Similarity, Triangle, triangle_from_angles

settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

MIN_ANGLE = math.radians(1.0)


def random_triangle(rng, min_angle=MIN_ANGLE, posed=False) -> Triangle:
    """Random non-obtuse triangle; optionally under a random similarity."""
    while True:
        b = rng.uniform(min_angle, math.pi / 2)
        c = rng.uniform(min_angle, math.pi / 2)
        a = math.pi - b - c
        if min_angle < a <= math.pi / 2:
            break
    t = triangle_from_angles(b, c)
    if not posed:
        return t
    sim = Similarity(
        rng.uniform(0.0, 2 * math.pi),
        rng.uniform(0.2, 5.0),
        Point2(rng.uniform(-10, 10), rng.uniform(-10, 10)),
    )
    return Triangle(sim.apply(t.a), sim.apply(t.b), sim.apply(t.c))


def random_interior_point(rng, t: Triangle) -> Point2:
    w = rng.dirichlet((1.0, 1.0, 1.0))
    xy = w[0] * np.asarray(t.a) + w[1] * np.asarray(t.b) + w[2] * np.asarray(t.c)
    return Point2(float(xy[0]), float(xy[1]))


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
