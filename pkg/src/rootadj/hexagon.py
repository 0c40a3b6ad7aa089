"""The axis / half-turn hexagon of a generator pair and the recognizer for
discrete stopping configurations.

For generators A, B with disjoint axes the hexagon has six sides in cyclic
order Ax_A, core, Ax_B, L_B, Ax_prod, L_A, where core is the common
perpendicular of the two axes (oriented from Ax_A toward Ax_B), L_A and L_B
are the half-turn lines with A = H_core H_LA and B = H_core H_LB, and Ax_prod
is the axis of A^-1 B.  Axis sides may degenerate to boundary or interior
points; half-turn sides are always proper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ElementaryGroup,
    GeometryViolation,
    IntersectingAxes,
    NoPerpendicular,
    NotDisjoint,
    UnresolvedOrder,
)
from .matrices import Elliptic, Identity, IsometryMatrix, classify, is_primitive, nth_root
from .geodesics import (
    BoundaryPoint,
    Disjoint,
    GeneralizedGeodesic,
    HalfTurn,
    InteriorPoint,
    IntersectionResult,
    PointHit,
    ProperGeodesic,
    SharedEnd,
    axis_of,
    chordal,
    common_perpendicular,
    compose_half_turns,
    intersect,
    involution_line,
    point_on_line,
    position_on_line,
    side_of,
)
from .tolerances import DEFAULT_TOL, Tolerances

SIDE_NAMES = ("ax_A", "core", "ax_B", "l_B", "ax_prod", "l_A")
SHAPES = {0: "hexagon", 1: "pentagon", 2: "quadrilateral", 3: "triangle"}


@dataclass(frozen=True)
class HexagonConfig:
    gen_a: IsometryMatrix
    gen_b: IsometryMatrix
    product: IsometryMatrix  # A^-1 B
    sides: tuple  # six GeneralizedGeodesic in SIDE_NAMES order
    vertices: tuple  # six vertex points (complex or boundary float), slot k = sides[k] ∩ sides[k+1]
    vertex_records: tuple  # six IntersectionResult records for the same slots
    right_of_core: bool

    def side(self, name: str) -> GeneralizedGeodesic:
        return self.sides[SIDE_NAMES.index(name)]

    @property
    def ax_a(self) -> GeneralizedGeodesic:
        return self.sides[0]

    @property
    def core(self) -> ProperGeodesic:
        return self.sides[1]

    @property
    def ax_b(self) -> GeneralizedGeodesic:
        return self.sides[2]

    @property
    def l_b(self) -> ProperGeodesic:
        return self.sides[3]

    @property
    def ax_prod(self) -> GeneralizedGeodesic:
        return self.sides[4]

    @property
    def l_a(self) -> ProperGeodesic:
        return self.sides[5]


@dataclass(frozen=True)
class StoppingClass:
    tag: str  # classes of (A, B, A^-1 B), e.g. "HHH"
    shape: str  # hexagon | pentagon | quadrilateral | triangle


@dataclass(frozen=True)
class NotStopping:
    reason: str


def _vertex_point(r: IntersectionResult):
    if isinstance(r, PointHit):
        return r.z
    if isinstance(r, SharedEnd):
        return r.p
    return None


def build_hexagon(
    a: IsometryMatrix, b: IsometryMatrix, tol: Tolerances = DEFAULT_TOL
) -> HexagonConfig:
    """Assemble the hexagon of the ordered pair (A, B).

    Raises IntersectingAxes when the axes cross in the interior (that case is
    handled by a different algorithm and is out of scope here) and
    ElementaryGroup when the pair shares a fixed point or an axis.
    """
    cls_a, cls_b = classify(a, tol), classify(b, tol)
    if isinstance(cls_a, Identity) or isinstance(cls_b, Identity):
        raise ElementaryGroup("a generator is the identity")
    ax_a, ax_b = axis_of(a, tol), axis_of(b, tol)
    hit = intersect(ax_a, ax_b, tol)
    if isinstance(hit, PointHit):
        raise IntersectingAxes("generator axes cross in the interior")
    if isinstance(hit, SharedEnd):
        raise ElementaryGroup("generator axes share a boundary point")
    try:
        core = common_perpendicular(ax_a, ax_b, tol)
    except (NotDisjoint, NoPerpendicular) as exc:
        raise ElementaryGroup(f"no core geodesic: {exc}") from exc
    l_a = involution_line(core, a, tol)
    l_b = involution_line(core, b, tol)
    product = a.inverse() * b
    if isinstance(classify(product, tol), Identity):
        raise ElementaryGroup("generators coincide")
    ax_prod = axis_of(product, tol)

    sides = (ax_a, core, ax_b, l_b, ax_prod, l_a)
    records = tuple(
        _adjacent_incidence(sides[k], sides[(k + 1) % 6], tol) for k in range(6)
    )
    vertices = tuple(_vertex_point(r) for r in records)
    if any(v is None for v in vertices):
        raise GeometryViolation("adjacent hexagon sides fail to meet")

    # reconstruction invariants
    rec_a = compose_half_turns(HalfTurn(core), HalfTurn(l_a), tol)
    rec_b = compose_half_turns(HalfTurn(core), HalfTurn(l_b), tol)
    rec_p = compose_half_turns(HalfTurn(l_a), HalfTurn(l_b), tol)
    err = max(rec_a.dist_mod_sign(a), rec_b.dist_mod_sign(b), rec_p.dist_mod_sign(product))
    if err > 1e6 * tol.alg:
        raise GeometryViolation(f"hexagon reconstruction failed (residual {err:.3e})")

    interior = _interior_signs(sides, vertices, tol)
    right = interior[1] > 0 if interior[1] != 0 else False
    return HexagonConfig(
        gen_a=a,
        gen_b=b,
        product=product,
        sides=sides,
        vertices=vertices,
        vertex_records=records,
        right_of_core=right,
    )


def _adjacent_incidence(
    s1: GeneralizedGeodesic, s2: GeneralizedGeodesic, tol: Tolerances
) -> IntersectionResult:
    """Incidence of two adjacent sides; a degenerate side is its own vertex."""
    if not isinstance(s1, ProperGeodesic):
        return PointHit(s1.z) if isinstance(s1, InteriorPoint) else SharedEnd(s1.p)
    if not isinstance(s2, ProperGeodesic):
        return PointHit(s2.z) if isinstance(s2, InteriorPoint) else SharedEnd(s2.p)
    return intersect(s1, s2, tol)


def _incident(side: GeneralizedGeodesic, vertex, tol: Tolerances) -> bool:
    """Is the vertex point on (or an end of) the side?"""
    if not isinstance(side, ProperGeodesic):
        if isinstance(vertex, complex):
            return isinstance(side, InteriorPoint) and abs(side.z - vertex) < math.sqrt(tol.geo)
        return isinstance(side, BoundaryPoint) and chordal(side.p, vertex) < tol.vertex
    if isinstance(vertex, complex):
        return abs(side_of(side, vertex)) < math.sqrt(tol.geo) * (1.0 + abs(vertex) ** 2)
    return min(chordal(vertex, side.p), chordal(vertex, side.q)) < tol.vertex


def _interior_signs(sides, vertices, tol: Tolerances) -> tuple:
    """Per-side sign of the hexagon interior (0 = degenerate or inconsistent).

    For each proper side, every vertex not incident to it must lie on one
    common side of its full geodesic; that sign marks the interior.
    """
    signs = []
    for k, s in enumerate(sides):
        if not isinstance(s, ProperGeodesic):
            signs.append(0)
            continue
        oriented = _oriented_side(sides, vertices, k)
        votes = set()
        for v in vertices:
            if v is None or _incident(s, v, tol):
                continue
            val = side_of(oriented, v)
            if abs(val) > tol.geo:
                votes.add(1 if val > 0 else -1)
        if len(votes) == 1:
            signs.append(votes.pop())
        else:
            signs.append(0)
    return tuple(signs)


def _oriented_side(sides, vertices, k: int) -> ProperGeodesic:
    """Side k oriented along the boundary traversal (vertex k-1 to vertex k)."""
    s = sides[k]
    assert isinstance(s, ProperGeodesic)
    v_in, v_out = vertices[(k - 1) % 6], vertices[k]
    t_in = _position_or_end(s, v_in)
    t_out = _position_or_end(s, v_out)
    if t_in > t_out:
        return s.reversed()
    return s


def _position_or_end(line: ProperGeodesic, v) -> float:
    if isinstance(v, complex):
        return position_on_line(line, v)
    if chordal(v, line.p) <= chordal(v, line.q):
        return -math.inf
    return math.inf


def point_in_hexagon(h: HexagonConfig, z: complex, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Strict interior test against every proper side's interior sign."""
    sides = h.sides
    vertices = h.vertices
    signs = _interior_signs(sides, vertices, tol)
    for k, s in enumerate(sides):
        if not isinstance(s, ProperGeodesic) or signs[k] == 0:
            continue
        val = side_of(_oriented_side(sides, vertices, k), z)
        if val * signs[k] <= 0:
            return False
    return True


def _tag_letter(cls) -> str:
    return {"hyperbolic": "H", "parabolic": "P", "elliptic": "E"}[cls.kind]


def classify_stopping(h: HexagonConfig, tol: Tolerances = DEFAULT_TOL):
    """Recognize a discrete stopping configuration.

    Returns a StoppingClass (class tag of (A, B, A^-1 B) plus the degenerate
    shape) when the hexagon is convex with consistent winding, every elliptic
    member is geometrically primitive, and every elliptic or parabolic member
    rotates into the hexagon interior.  Otherwise returns NotStopping with the
    first failed condition; NotStopping is not a discreteness verdict.
    """
    classes = [classify(h.gen_a, tol), classify(h.gen_b, tol), classify(h.product, tol)]
    if any(isinstance(c, Identity) for c in classes):
        return NotStopping("degenerate member (identity)")
    tag = "".join(_tag_letter(c) for c in classes)

    signs = _interior_signs(h.sides, h.vertices, tol)
    proper_signs = [s for k, s in enumerate(signs) if isinstance(h.sides[k], ProperGeodesic)]
    if 0 in proper_signs:
        return NotStopping("not convex: a side has hexagon vertices on both sides")
    if len(set(proper_signs)) != 1:
        return NotStopping("not convex: inconsistent winding around the boundary")

    for cls, member, first_line in (
        (classes[0], h.gen_a, h.core),
        (classes[1], h.gen_b, h.core),
        (classes[2], h.product, h.l_a),
    ):
        if isinstance(cls, Elliptic):
            try:
                if not is_primitive(cls):
                    return NotStopping(
                        f"elliptic member with non-minimal rotation (order {cls.finite_order})"
                    )
            except UnresolvedOrder:
                return NotStopping("elliptic member of unresolved order")
        if cls.kind in ("elliptic", "parabolic"):
            if not _rotates_into_interior(h, member, first_line, tol):
                return NotStopping(f"{cls.kind} member rotates away from the hexagon")

    degenerate = sum(1 for s in (h.ax_a, h.ax_b, h.ax_prod) if not isinstance(s, ProperGeodesic))
    return StoppingClass(tag=tag, shape=SHAPES[degenerate])


def _rotates_into_interior(
    h: HexagonConfig, member: IsometryMatrix, first_line: ProperGeodesic, tol: Tolerances
) -> bool:
    """Does the half-angle line of `member` (relative to its factorization
    through first_line) pass through the hexagon?

    The square root of the member interpolates halfway between its two
    half-turn lines; for a stopping configuration that midline must sweep
    through the hexagon wedge, which is the machine-checkable form of the
    requirement that parabolic and elliptic rotations point into the hexagon.
    """
    half = nth_root(member, 2, tol)
    try:
        midline = involution_line(first_line, half, tol)
    except Exception:
        return False
    axis = axis_of(member, tol)
    if isinstance(axis, InteriorPoint):
        # sample both rays out of the fixed point
        t0 = position_on_line(midline, axis.z)
        offsets = (-0.5, -0.1, -0.01, 0.01, 0.1, 0.5)
        samples = [point_on_line(midline, t0 + t) for t in offsets]
    else:
        # parabolic: the fixed boundary point is an end of the midline; the
        # hexagon wedge at an ideal vertex absorbs the whole ray toward it
        assert isinstance(axis, BoundaryPoint)
        toward_p = chordal(axis.p, midline.p) < chordal(axis.p, midline.q)
        sign = -1.0 if toward_p else 1.0
        samples = [point_on_line(midline, sign * t) for t in (1.0, 3.0, 6.0, 10.0)]
    return any(point_in_hexagon(h, z, tol) for z in samples)


def cyclic_rotate(h: HexagonConfig, k: int, tol: Tolerances = DEFAULT_TOL) -> HexagonConfig:
    """Re-root the hexagon one step along the cyclic order of (A, B, A^-1 B).

    One step rebuilds on the pair (B^-1, B^-1 A), whose hexagon reuses the same
    six geodesics with the axis roles cyclically permuted, so the class tag of
    the result is the cyclic permutation of the original tag.
    """
    k = k % 3
    a, b = h.gen_a, h.gen_b
    for _ in range(k):
        a, b = b.inverse(), b.inverse() * a
    if k == 0:
        return h
    return build_hexagon(a, b, tol)


def hexagon_tag(h: HexagonConfig, tol: Tolerances = DEFAULT_TOL) -> str:
    return "".join(
        _tag_letter(classify(m, tol)) for m in (h.gen_a, h.gen_b, h.product)
    )
