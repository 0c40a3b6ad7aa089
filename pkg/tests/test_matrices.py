import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootadj.errors import DegenerateLineMatrix, IdentityInput
from rootadj.matrices import (
    Elliptic,
    Hyperbolic,
    Identity,
    IsometryMatrix,
    Parabolic,
    axes_perpendicular,
    classify,
    is_primitive,
    line_matrix,
    nth_root,
    rational_power,
    recognize_rational,
    rotation_angle,
)

from conftest import random_elliptic, random_hyperbolic, random_parabolic, random_psl_matrix


def as_numpy(m: IsometryMatrix) -> np.ndarray:
    return np.array([[m.a, m.b], [m.c, m.d]])


def numpy_dist_mod_sign(x: np.ndarray, y: np.ndarray) -> float:
    return min(np.max(np.abs(x - y)), np.max(np.abs(x + y)))


# -- classification -----------------------------------------------------------


def test_classify_parabolic_unipotent():
    assert isinstance(classify(IsometryMatrix(1, 1, 0, 1)), Parabolic)


def test_classify_hyperbolic_diagonal():
    cls = classify(IsometryMatrix(2, 0, 0, 0.5))
    assert isinstance(cls, Hyperbolic)
    assert cls.translation_length == pytest.approx(2 * math.log(2), abs=1e-12)


def test_classify_elliptic_standard_rotation():
    t = math.pi / 4
    cls = classify(IsometryMatrix(math.cos(t), -math.sin(t), math.sin(t), math.cos(t)))
    assert isinstance(cls, Elliptic)
    assert cls.rotation_angle == pytest.approx(math.pi / 2, abs=1e-12)
    assert cls.finite_order == 4


def test_classify_identity():
    assert isinstance(classify(IsometryMatrix(1, 0, 0, 1)), Identity)
    assert isinstance(classify(IsometryMatrix(-3, 0, 0, -1 / 3.0)), Hyperbolic)


def test_classification_conjugation_invariant(rng):
    for _ in range(100):
        m = {0: random_hyperbolic, 1: random_parabolic, 2: random_elliptic}[rng.randrange(3)](rng)
        t = random_psl_matrix(rng)
        c1, c2 = classify(m), classify(t * m * t.inverse())
        assert type(c1) is type(c2)
        if isinstance(c1, Hyperbolic):
            assert c1.translation_length == pytest.approx(c2.translation_length, abs=1e-7)
        if isinstance(c1, Elliptic):
            assert abs(c1.rotation_angle) == pytest.approx(abs(c2.rotation_angle), abs=1e-7)


# -- roots ---------------------------------------------------------------------


def test_nth_root_diagonal_square():
    r = nth_root(IsometryMatrix(4, 0, 0, 0.25), 2)
    assert r.dist_mod_sign(IsometryMatrix(2, 0, 0, 0.5)) < 1e-12


def test_nth_root_parabolic_parameter_division():
    r = nth_root(IsometryMatrix(1, 3, 0, 1), 3)
    assert r.dist_mod_sign(IsometryMatrix(1, 1, 0, 1)) < 1e-12


def test_nth_root_generic_cube_against_numpy():
    m = IsometryMatrix(5, 3, 3, 2)
    r = nth_root(m, 3)
    cubed = np.linalg.matrix_power(as_numpy(r), 3)
    assert numpy_dist_mod_sign(cubed, as_numpy(m)) < 1e-9


def test_nth_root_identity_rejected():
    with pytest.raises(IdentityInput):
        nth_root(IsometryMatrix(1, 0, 0, 1), 2)


def test_root_consistency_all_classes(rng):
    makers = (random_hyperbolic, random_parabolic, random_elliptic)
    for _ in range(120):
        m = makers[rng.randrange(3)](rng)
        for n in (2, 3, 5, 7):
            r = nth_root(m, n)
            assert r.power(n).dist_mod_sign(m) < 1e-9


def test_rational_power_identity_exponent(rng):
    m = random_hyperbolic(rng)
    assert rational_power(m, 1, 1).dist_mod_sign(m) == 0.0


def test_rational_power_diagonal_three_halves():
    r = rational_power(IsometryMatrix(4, 0, 0, 0.25), 3, 2)
    assert r.dist_mod_sign(IsometryMatrix(8, 0, 0, 0.125)) < 1e-12


def test_rational_power_against_numpy_power():
    m = IsometryMatrix(5, 3, 3, 2)
    r = rational_power(m, 5, 3)
    lhs = np.linalg.matrix_power(as_numpy(r), 3)
    rhs = np.linalg.matrix_power(as_numpy(m), 5)
    assert numpy_dist_mod_sign(lhs, rhs) < 1e-8


def test_power_root_commutation(rng):
    for _ in range(25):
        m = random_hyperbolic(rng)
        base = rational_power(m, 2, 3)
        for k in (2, 3):
            assert rational_power(m, 2 * k, 3 * k).dist_mod_sign(base) < 1e-9


# -- line matrices ---------------------------------------------------------------


def test_line_matrix_examples():
    lm = line_matrix(IsometryMatrix(2, 0, 0, 0.5))
    assert lm.entries() == pytest.approx((1, 0, 0, -1))
    c, s = math.cosh(1), math.sinh(1)
    lm2 = line_matrix(IsometryMatrix(c, s, s, c))
    assert lm2.entries() == pytest.approx((0, 1, 1, 0))
    lm3 = line_matrix(IsometryMatrix(1, 1, 0, 1))
    assert lm3.entries() == pytest.approx((0, 1, 0, 0))


def test_line_matrix_traceless_and_fixed_points(rng):
    for _ in range(60):
        m = random_hyperbolic(rng)
        lm = line_matrix(m)
        assert abs(lm.trace) < 1e-9
        # fixed points of the line-matrix map match the axis ends
        p, q = m.fixed_points()
        for x in (p, q):
            if math.isinf(x):
                assert abs(lm.c) < 1e-7
            else:
                assert abs(lm.c * x * x - (lm.a - lm.d) * x - lm.b) < 1e-7 * (1 + x * x)


def test_line_matrix_identity_degenerate():
    with pytest.raises(DegenerateLineMatrix):
        line_matrix(IsometryMatrix(1, 0, 0, 1))


def test_elliptic_half_turn_line_matrix_is_point():
    # rotation by pi about i: the line matrix encodes the fixed point itself
    m = IsometryMatrix(0, -1, 1, 0)
    lm = line_matrix(m)
    assert lm.det > 0
    assert abs(lm.a / lm.c - 0.0) < 1e-12


# -- perpendicularity --------------------------------------------------------------


def hyperbolic_with_axis(p: float, q: float, length: float = 2.0) -> IsometryMatrix:
    from rootadj.fixtures import translation_along
    from rootadj.geodesics import ProperGeodesic

    return translation_along(ProperGeodesic(p, q), length)


def test_axes_perpendicular_trivial_cases():
    c, s = math.cosh(1), math.sinh(1)
    f = IsometryMatrix(2, 0, 0, 0.5)  # axis (0, inf)
    g = IsometryMatrix(c, s, s, c)  # axis (-1, 1)
    assert axes_perpendicular(f, g)
    assert not axes_perpendicular(f, hyperbolic_with_axis(1, 3))
    assert not axes_perpendicular(f, IsometryMatrix(4, 0, 0, 0.25))  # same axis


def test_axes_perpendicular_circle_orthogonality_oracle(rng):
    # perpendicular iff (c1 - c2)^2 = r1^2 + r2^2; build both kinds explicitly
    for _ in range(100):
        c1 = rng.uniform(-3, 3)
        r1 = rng.uniform(0.3, 2.0)
        gap = rng.uniform(r1 + 0.2, r1 + 3.0)
        c2 = c1 + gap
        r2_perp = math.sqrt(gap * gap - r1 * r1)
        f = hyperbolic_with_axis(c1 - r1, c1 + r1)
        g_perp = hyperbolic_with_axis(c2 - r2_perp, c2 + r2_perp)
        assert axes_perpendicular(f, g_perp)
        r2_off = r2_perp * rng.uniform(1.05, 1.4)
        if abs(gap - (r1 + r2_off)) > 1e-3:  # keep the axes honestly distinct
            g_off = hyperbolic_with_axis(c2 - r2_off, c2 + r2_off)
            assert not axes_perpendicular(f, g_off)


def test_axes_perpendicular_improper_line():
    # a parabolic fixed point sitting at an axis end counts as perpendicular
    f = hyperbolic_with_axis(-1.0, 1.0)
    par_at_end = IsometryMatrix(1 + 1.0, -1.0, 1.0, 1 - 1.0)  # fixes 1
    assert abs(par_at_end.apply_boundary(1.0) - 1.0) < 1e-12
    assert axes_perpendicular(f, par_at_end)
    shift = IsometryMatrix(1, 1, 0, 1)
    par_off = shift * par_at_end * shift.inverse()
    assert not axes_perpendicular(f, par_off)


def test_axes_perpendicular_symmetric_and_conjugation_invariant(rng):
    for _ in range(40):
        f, g = random_hyperbolic(rng), random_hyperbolic(rng)
        t = random_psl_matrix(rng)
        v = axes_perpendicular(f, g)
        assert axes_perpendicular(g, f) == v
        assert axes_perpendicular(t * f * t.inverse(), t * g * t.inverse()) == v


# -- rational recognition -----------------------------------------------------------


def test_is_primitive_minimal_rotation():
    assert is_primitive(Elliptic(rotation_angle=2 * math.pi / 5))
    assert is_primitive(Elliptic(rotation_angle=-2 * math.pi / 5))


def test_is_primitive_rejects_non_minimal():
    assert not is_primitive(Elliptic(rotation_angle=4 * math.pi / 5))


def test_is_primitive_rejects_irrational():
    assert not is_primitive(Elliptic(rotation_angle=1.0))
    # and classify leaves the order unresolved for such angles
    t = 0.5
    cls = classify(IsometryMatrix(math.cos(t), -math.sin(t), math.sin(t), math.cos(t)))
    assert isinstance(cls, Elliptic)
    assert cls.finite_order is None


def test_recognize_rational_behaviour():
    assert recognize_rational(0.25) is not None
    assert recognize_rational(1.0 / 720.0) is not None
    assert recognize_rational(1.0 / (2 * math.pi)) is None
    golden = (math.sqrt(5) - 1) / 2
    assert recognize_rational(golden / 2) is None


# -- hypothesis property tests --------------------------------------------------------


finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False, allow_infinity=False)


@st.composite
def psl_matrices(draw):
    a = draw(finite)
    b = draw(finite)
    c = draw(finite)
    d = draw(finite)
    det = a * d - b * c
    if det <= 0.05:
        a, d = a + 1.5, d + 1.5
        det = a * d - b * c
    if det <= 0.05:
        return IsometryMatrix(2.0, 1.0, 1.0, 1.0)
    return IsometryMatrix(a, b, c, d)


@settings(max_examples=100, deadline=None)
@given(psl_matrices(), st.integers(min_value=2, max_value=7))
def test_hypothesis_root_consistency(m, n):
    if isinstance(classify(m), Identity):
        return
    r = nth_root(m, n)
    assert r.power(n).dist_mod_sign(m) < 1e-9


@settings(max_examples=80, deadline=None)
@given(psl_matrices())
def test_hypothesis_rotation_angle_sign_flip(m):
    cls = classify(m)
    if not isinstance(cls, Elliptic):
        return
    inv = classify(m.inverse())
    assert isinstance(inv, Elliptic)
    if abs(abs(cls.rotation_angle) - math.pi) > 1e-7:
        assert inv.rotation_angle == pytest.approx(-cls.rotation_angle, abs=1e-9)
