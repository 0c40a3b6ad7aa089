import math
import random

import pytest

from rootadj.fixtures import pair_from_lines, rotate_line, translation_along
from rootadj.geodesics import INF, ProperGeodesic, perpendicular_at, point_on_line
from rootadj.matrices import IsometryMatrix


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_psl_matrix(rng, scale=2.0) -> IsometryMatrix:
    """Random well-conditioned element for conjugation tests."""
    while True:
        a, b, c, d = (rng.uniform(-scale, scale) for _ in range(4))
        det = a * d - b * c
        if det > 0.05:
            return IsometryMatrix(a, b, c, d)


def random_hyperbolic(rng) -> IsometryMatrix:
    t = rng.uniform(2.05, 8.0)
    lam = (t + math.sqrt(t * t - 4.0)) / 2.0
    m = IsometryMatrix(lam, 0.0, 0.0, 1.0 / lam)
    g = random_psl_matrix(rng)
    return g * m * g.inverse()


def random_parabolic(rng) -> IsometryMatrix:
    m = IsometryMatrix(1.0, rng.uniform(0.2, 3.0) * rng.choice((-1.0, 1.0)), 0.0, 1.0)
    g = random_psl_matrix(rng)
    return g * m * g.inverse()


def random_elliptic(rng) -> IsometryMatrix:
    t = rng.uniform(0.05, math.pi - 0.05)
    m = IsometryMatrix(math.cos(t), -math.sin(t), math.sin(t), math.cos(t))
    g = random_psl_matrix(rng)
    return g * m * g.inverse()


def random_geodesic(rng) -> ProperGeodesic:
    p = rng.uniform(-5.0, 5.0)
    q = rng.uniform(-5.0, 5.0)
    while abs(q - p) < 0.3:
        q = rng.uniform(-5.0, 5.0)
    return ProperGeodesic(p, q)
