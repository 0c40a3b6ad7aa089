"""Generalized geodesics in the upper half-plane and half-turn machinery.

A generalized geodesic is a proper geodesic (two ideal endpoints), a boundary
point (an improper line, the axis of a parabolic), or an interior point (the
axis of an elliptic).  Each kind is encoded by a traceless real 2x2 matrix:

* det < 0  -- proper line (the matrix is the reflection across it, acting on
  the conjugate coordinate),
* det = 0  -- boundary point (doubly fixed),
* det > 0  -- interior point (the matrix is the half-turn rotation about it).

This single encoding makes the core constructions one-liners: composing two
reflections is a matrix product, and the common perpendicular of two disjoint
objects is the matrix commutator of their encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CoincidentLines,
    GeometryViolation,
    NoPerpendicular,
    NotAnInvolution,
    NotDisjoint,
)
from .matrices import INF, IsometryMatrix, line_matrix_entries, _norm4
from .tolerances import DEFAULT_TOL, Tolerances

__all__ = [
    "INF",
    "ProperGeodesic",
    "BoundaryPoint",
    "InteriorPoint",
    "GeneralizedGeodesic",
    "HalfTurn",
    "PointHit",
    "SharedEnd",
    "Disjoint",
    "IntersectionResult",
    "boundary_angle",
    "chordal",
    "hyp_dist",
    "axis_of",
    "half_turn_apply",
    "compose_half_turns",
    "involution_line",
    "common_perpendicular",
    "perpendicular_at",
    "reflect_geodesic",
    "intersect",
    "bounds_region",
    "side_of",
    "position_on_line",
    "point_on_line",
    "same_geodesic",
]


# -- boundary helpers -----------------------------------------------------------


def boundary_angle(x: float) -> float:
    """Angle of the Cayley image (x - i)/(x + i) on the unit circle."""
    if math.isinf(x):
        return 0.0
    return math.atan2(-2.0 * x, x * x - 1.0)


def chordal(x: float, y: float) -> float:
    """Chordal distance between two boundary points on the Cayley circle."""
    return abs(2.0 * math.sin((boundary_angle(x) - boundary_angle(y)) / 2.0))


def hyp_dist(z: complex, w: complex) -> float:
    """Hyperbolic distance between interior points."""
    t = 1.0 + (abs(z - w) ** 2) / (2.0 * z.imag * w.imag)
    return math.acosh(max(t, 1.0))


# -- the three kinds -------------------------------------------------------------


@dataclass(frozen=True)
class ProperGeodesic:
    """Geodesic with ideal endpoints p, q, oriented from p to q."""

    p: float
    q: float

    kind = "proper"

    def reversed(self) -> "ProperGeodesic":
        return ProperGeodesic(self.q, self.p)


@dataclass(frozen=True)
class BoundaryPoint:
    p: float

    kind = "boundary"


@dataclass(frozen=True)
class InteriorPoint:
    z: complex

    kind = "interior"


GeneralizedGeodesic = ProperGeodesic | BoundaryPoint | InteriorPoint


@dataclass(frozen=True)
class HalfTurn:
    """Reflection across a proper geodesic (orientation-reversing involution)."""

    line: ProperGeodesic


# -- traceless encodings ----------------------------------------------------------


def _rep(g: GeneralizedGeodesic) -> tuple[float, float, float, float]:
    """Traceless matrix [[A, B], [C, -A]] encoding g, normalized to unit scale."""
    if isinstance(g, ProperGeodesic):
        p, q = g.p, g.q
        if math.isinf(p) or math.isinf(q):
            x = q if math.isinf(p) else p
            return _scale((-1.0, 2.0 * x, 0.0, 1.0))
        return _scale(((p + q) / 2.0, -p * q, 1.0, -(p + q) / 2.0))
    if isinstance(g, BoundaryPoint):
        if math.isinf(g.p):
            return (0.0, 1.0, 0.0, 0.0)
        return _scale((g.p, -g.p * g.p, 1.0, -g.p))
    x, y = g.z.real, g.z.imag
    return _scale((x, -(x * x + y * y), 1.0, -x))


def _scale(f: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
    a, b, c, d = f
    det = a * d - b * c
    if abs(det) > 1e-300:
        s = 1.0 / math.sqrt(abs(det))
    else:
        s = 1.0 / _norm4(a, b, c, d)
    return (a * s, b * s, c * s, d * s)


def _rep_det(f: tuple[float, float, float, float]) -> float:
    a, b, c, d = f
    return a * d - b * c


def _from_rep(f: tuple[float, float, float, float], tol: Tolerances = DEFAULT_TOL) -> GeneralizedGeodesic:
    """Decode a traceless matrix back into a generalized geodesic."""
    a, b, c, d = _scale(f)
    det = a * d - b * c
    scale = _norm4(a, b, c, d) ** 2
    if det < -tol.geo * scale:
        # fixed points of z -> (az + b)/(cz - a): c z^2 - 2a z - b = 0
        if abs(c) < tol.geo * math.sqrt(scale):
            return ProperGeodesic(-b / (2.0 * a), INF)
        disc = math.sqrt(4.0 * a * a + 4.0 * b * c)
        q0 = 2.0 * a + math.copysign(disc, a) if a != 0.0 else disc
        z1 = q0 / (2.0 * c)
        z2 = -b / (c * z1) if z1 != 0.0 else 2.0 * a / c
        return ProperGeodesic(min(z1, z2), max(z1, z2))
    if det > tol.geo * scale:
        if abs(c) < 1e-300:
            raise GeometryViolation("interior-point encoding with vanishing c entry")
        return InteriorPoint(complex(a / c, math.sqrt(det) / abs(c)))
    if abs(c) < 1e-12 * math.sqrt(scale):
        return BoundaryPoint(INF)
    return BoundaryPoint(a / c)


def _mul(f, g):
    fa, fb, fc, fd = f
    ga, gb, gc, gd = g
    return (
        fa * ga + fb * gc,
        fa * gb + fb * gd,
        fc * ga + fd * gc,
        fc * gb + fd * gd,
    )


def axis_of(m: IsometryMatrix, tol: Tolerances = DEFAULT_TOL) -> GeneralizedGeodesic:
    """Axis of an isometry: proper geodesic, parabolic boundary point, or
    elliptic interior point, read off the line matrix m - m^-1."""
    return _from_rep(line_matrix_entries(m), tol)


# -- reflections ------------------------------------------------------------------


def half_turn_apply(h: HalfTurn, z):
    """Apply the reflection across h.line to a point of the closed half-plane.

    Accepts an interior complex point or a boundary real (INF allowed).
    """
    a, b, c, d = _rep(h.line)
    if isinstance(z, complex):
        w = z.conjugate()
        return (a * w + b) / (c * w + d)
    if math.isinf(z):
        return a / c if c != 0.0 else INF
    denom = c * z + d
    if denom == 0.0:
        return INF
    return (a * z + b) / denom


def compose_half_turns(h1: HalfTurn, h2: HalfTurn, tol: Tolerances = DEFAULT_TOL) -> IsometryMatrix:
    """Matrix of the orientation-preserving composition h1 o h2."""
    if same_geodesic(h1.line, h2.line, tol):
        raise CoincidentLines("half-turn lines coincide; composition is the identity")
    f = _mul(_rep(h1.line), _rep(h2.line))
    return IsometryMatrix(*f)


def involution_line(
    line: ProperGeodesic, g: IsometryMatrix, tol: Tolerances = DEFAULT_TOL
) -> ProperGeodesic:
    """The unique geodesic X with g = H_line o H_X.

    Exists iff H_line o g is an involution, which happens exactly when `line`
    is perpendicular to the axis of g (or passes through its fixed point).
    """
    f = _mul(_rep(line), (g.a, g.b, g.c, g.d))
    norm = _norm4(*f)
    trace = f[0] + f[3]
    if abs(trace) > 1e4 * tol.alg * norm:
        raise NotAnInvolution(
            f"line is not admissibly positioned for g (relative trace {trace / norm:.3e})"
        )
    # project out residual trace so the result is exactly a reflection
    t2 = trace / 2.0
    result = _from_rep((f[0] - t2, f[1], f[2], f[3] - t2), tol)
    if not isinstance(result, ProperGeodesic):
        raise NotAnInvolution("factoring line degenerated to a point")
    return result


def perpendicular_at(line: ProperGeodesic, z: complex, tol: Tolerances = DEFAULT_TOL) -> ProperGeodesic:
    """The geodesic through z perpendicular to `line` (z must lie on `line`)."""
    f = _mul(_rep(line), _rep(InteriorPoint(z)))
    trace = f[0] + f[3]
    if abs(trace) > math.sqrt(tol.geo):
        raise GeometryViolation("point does not lie on the line")
    t2 = trace / 2.0
    result = _from_rep((f[0] - t2, f[1], f[2], f[3] - t2), tol)
    assert isinstance(result, ProperGeodesic)
    return result


def reflect_geodesic(g: GeneralizedGeodesic, mirror: ProperGeodesic, tol: Tolerances = DEFAULT_TOL) -> GeneralizedGeodesic:
    """Image of g under the half-turn about `mirror`."""
    m = _rep(mirror)
    return _from_rep(_mul(_mul(m, _rep(g)), m), tol)


# -- common perpendicular -----------------------------------------------------------


def common_perpendicular(
    g1: GeneralizedGeodesic, g2: GeneralizedGeodesic, tol: Tolerances = DEFAULT_TOL
) -> ProperGeodesic:
    """Unique geodesic perpendicular to (or through) both inputs, oriented from
    g1 toward g2.  Inputs must be disjoint."""
    hit = intersect(g1, g2, tol)
    if not isinstance(hit, Disjoint):
        if isinstance(g1, (BoundaryPoint, InteriorPoint)) and isinstance(
            g2, (BoundaryPoint, InteriorPoint)
        ):
            raise NoPerpendicular("both inputs are the same point")
        raise NotDisjoint(f"inputs intersect ({hit})")
    f1, f2 = _rep(g1), _rep(g2)
    comm = tuple(x - y for x, y in zip(_mul(f1, f2), _mul(f2, f1)))
    if _norm4(*comm) < tol.geo:
        raise NoPerpendicular("inputs have no unique common perpendicular")
    perp = _from_rep(comm, tol)
    if not isinstance(perp, ProperGeodesic):
        raise GeometryViolation("commutator of disjoint objects must be a proper line")
    # orient from g1 toward g2 using positions of the feet along perp
    t1 = position_on_line(perp, _foot(perp, g1, tol))
    t2 = position_on_line(perp, _foot(perp, g2, tol))
    if t1 > t2:
        perp = perp.reversed()
    return perp


def _foot(line: ProperGeodesic, g: GeneralizedGeodesic, tol: Tolerances):
    """Point where `line` meets g (crossing point, boundary point, or interior point)."""
    if isinstance(g, BoundaryPoint):
        return g.p
    if isinstance(g, InteriorPoint):
        return g.z
    hit = intersect(line, g, tol)
    if isinstance(hit, PointHit):
        return hit.z
    if isinstance(hit, SharedEnd):
        return hit.p
    raise GeometryViolation("expected the perpendicular to meet its source")


# -- intersection -------------------------------------------------------------------


@dataclass(frozen=True)
class PointHit:
    z: complex

    kind = "point"


@dataclass(frozen=True)
class SharedEnd:
    p: float

    kind = "shared-end"


@dataclass(frozen=True)
class Disjoint:
    distance: float

    kind = "empty"


IntersectionResult = PointHit | SharedEnd | Disjoint


def intersect(
    g1: GeneralizedGeodesic, g2: GeneralizedGeodesic, tol: Tolerances = DEFAULT_TOL
) -> IntersectionResult:
    """Classify the intersection of two generalized geodesics.

    Near-coincident ideal endpoints snap to SharedEnd at the vertex tolerance.
    Disjoint carries the hyperbolic distance (inf when an ideal point is
    involved).
    """
    k1, k2 = g1.kind, g2.kind
    if k1 == "proper" and k2 == "proper":
        return _intersect_lines(g1, g2, tol)
    if k1 == "proper" or k2 == "proper":
        line, point = (g1, g2) if k1 == "proper" else (g2, g1)
        if isinstance(point, BoundaryPoint):
            if min(chordal(point.p, line.p), chordal(point.p, line.q)) < tol.vertex:
                return SharedEnd(point.p)
            return Disjoint(INF)
        # interior point on the line iff the product trace vanishes
        f = _mul(_rep(line), _rep(point))
        tau = f[0] + f[3]
        if abs(tau) < _snap_sinh(tol):
            return PointHit(point.z)
        return Disjoint(math.asinh(abs(tau) / 2.0))
    if k1 == "boundary" and k2 == "boundary":
        if chordal(g1.p, g2.p) < tol.vertex:
            return SharedEnd(g1.p)
        return Disjoint(INF)
    if k1 == "interior" and k2 == "interior":
        d = hyp_dist(g1.z, g2.z)
        if d < tol.vertex:
            return PointHit(g1.z)
        return Disjoint(d)
    return Disjoint(INF)  # boundary point vs interior point


def _snap_sinh(tol: Tolerances) -> float:
    # |trace| = 2 sinh(distance) for a unit-normalized line/point pair
    return 2.0 * math.sinh(tol.vertex)


def _intersect_lines(g1: ProperGeodesic, g2: ProperGeodesic, tol: Tolerances) -> IntersectionResult:
    ends = [
        (chordal(a, b), x)
        for a, b, x in (
            (g1.p, g2.p, g1.p),
            (g1.p, g2.q, g1.p),
            (g1.q, g2.p, g1.q),
            (g1.q, g2.q, g1.q),
        )
    ]
    gap, point = min(ends, key=lambda t: t[0])
    if gap < tol.vertex:
        return SharedEnd(point)
    f = _mul(_rep(g1), _rep(g2))
    tau = f[0] + f[3]
    # reflections compose to: elliptic (crossing) |tau| < 2, parabolic (shared
    # end) |tau| = 2, hyperbolic (disjoint) |tau| > 2
    if abs(tau) >= 2.0:
        return Disjoint(math.acosh(abs(tau) / 2.0))
    m = IsometryMatrix(*f)
    (z,) = m.fixed_points()
    if not isinstance(z, complex):
        return SharedEnd(z)
    if z.imag < tol.geo:
        return SharedEnd(z.real)
    return PointHit(z)


def crossing_angle(g1: ProperGeodesic, g2: ProperGeodesic, tol: Tolerances = DEFAULT_TOL) -> float:
    """Angle in (0, pi/2] between two crossing geodesics."""
    f = _mul(_rep(g1), _rep(g2))
    tau = abs(f[0] + f[3])
    if tau >= 2.0:
        raise GeometryViolation("geodesics do not cross")
    # the composed rotation has |trace| = 2|cos(angle)|
    return math.acos(min(tau / 2.0, 1.0))


# -- sides, positions, regions ---------------------------------------------------------


def side_of(line: ProperGeodesic, z) -> float:
    """Signed side of an oriented geodesic, zero on the geodesic itself.

    The value is -Re(T(z)) for the half-plane-preserving Mobius map T sending
    p -> 0 and q -> infinity; orientation reversal flips the sign.  Interior
    complex points and boundary reals (INF allowed) are accepted.
    """
    p, q = line.p, line.q
    if isinstance(z, complex):
        zz = z
    else:
        if math.isinf(z):
            if math.isinf(p) or math.isinf(q):
                return 0.0
            return math.copysign(1.0, q - p)
        if min(chordal(z, p), chordal(z, q)) < 1e-12:
            return 0.0
        zz = complex(z, 0.0)
    if math.isinf(q):
        val = p - zz.real
    elif math.isinf(p):
        val = zz.real - q
    else:
        w = (zz - p) / (zz - q)
        val = w.real * (q - p)
    return val


def position_on_line(line: ProperGeodesic, z) -> float:
    """Position parameter of a point on `line` (hyperbolic arclength scale).

    Boundary endpoints map to -inf (start) and +inf (end); interior points on
    the line map to finite reals increasing along the orientation.
    """
    p, q = line.p, line.q
    if not isinstance(z, complex):
        if math.isinf(z):
            if math.isinf(p):
                return -INF
            if math.isinf(q):
                return INF
        if chordal(z, p) < 1e-12:
            return -INF
        if chordal(z, q) < 1e-12:
            return INF
        raise GeometryViolation("boundary point is not an end of the line")
    w = _to_vertical(p, q, z)
    return math.log(abs(w)) if abs(w) > 0 else -INF


def point_on_line(line: ProperGeodesic, t: float) -> complex:
    """Inverse of position_on_line for finite parameters."""
    p, q = line.p, line.q
    w = complex(0.0, math.exp(t))
    if math.isinf(q):
        return w + p
    if math.isinf(p):
        # map w under z -> q - 1/z
        return q - 1.0 / w
    if q > p:
        # inverse of w = (z - p)/(q - z)
        return (q * w + p) / (w + 1.0)
    # inverse of w = (z - p)/(z - q)
    return (q * w - p) / (w - 1.0)


def _to_vertical(p: float, q: float, z: complex) -> complex:
    """Mobius map sending p -> 0, q -> inf (preserving the upper half-plane)."""
    if math.isinf(q):
        return z - p
    if math.isinf(p):
        return -1.0 / (z - q)
    return (z - p) / (q - z) * (q - p) / abs(q - p)


def same_geodesic(
    g1: GeneralizedGeodesic, g2: GeneralizedGeodesic, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Equality as unoriented point sets."""
    if g1.kind != g2.kind:
        return False
    if isinstance(g1, ProperGeodesic):
        direct = max(chordal(g1.p, g2.p), chordal(g1.q, g2.q))
        flipped = max(chordal(g1.p, g2.q), chordal(g1.q, g2.p))
        return min(direct, flipped) < tol.vertex
    if isinstance(g1, BoundaryPoint):
        return chordal(g1.p, g2.p) < tol.vertex
    return hyp_dist(g1.z, g2.z) < tol.vertex


def bounds_region(
    g1: ProperGeodesic,
    g2: ProperGeodesic,
    g3: ProperGeodesic,
    tol: Tolerances = DEFAULT_TOL,
) -> bool:
    """True iff the three geodesics are pairwise disjoint (ideal contact
    allowed) and none separates the other two."""
    lines = (g1, g2, g3)
    for i in range(3):
        for j in range(i + 1, 3):
            if isinstance(intersect(lines[i], lines[j], tol), PointHit):
                return False
    for i in range(3):
        a = lines[i]
        others = [lines[j] for j in range(3) if j != i]
        signs = []
        for g in others:
            s = _line_side_sign(a, g, tol)
            if s != 0:
                signs.append(s)
        if len(signs) == 2 and signs[0] != signs[1]:
            return False
    return True


def _line_side_sign(base: ProperGeodesic, g: ProperGeodesic, tol: Tolerances) -> int:
    """Which side of `base` the geodesic g lies on (0 if undetermined)."""
    votes = []
    for x in (g.p, g.q):
        if min(chordal(x, base.p), chordal(x, base.q)) < tol.vertex:
            continue  # shared ideal point contributes no side
        v = side_of(base, x)
        if abs(v) > tol.geo:
            votes.append(1 if v > 0 else -1)
    if not votes:
        return 0
    if len(votes) == 2 and votes[0] != votes[1]:
        # endpoints straddle the base line: treat as "on both sides";
        # the separation test above only fires on consistent sides
        return 0
    return votes[0]
