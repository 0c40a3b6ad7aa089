"""Root-line fans and the discreteness decision for adjoined roots.

Rooting a generator X of a stopping hexagon produces the fan of lines
L_s with X^(s/n) = H_core o H_{L_s}, s = 1..n.  Each interior fan line enters
through the rooted axis side and exits through the far corner: the interior of
Ax_Y, the interior of L_Y, the interior of Ax_{X^-1 Y}, or one of the two
vertices of L_Y.  The verdict is read off the exit pattern: clean exits
through the axis sides keep the group discrete and free; any incidence with
L_Y produces an elliptic element whose rotation decides between discrete-not-
free, a referral to the elliptic cases, and non-discreteness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import GeometryViolation, NotStoppingInput, UnresolvedOrder
from .geodesics import (
    BoundaryPoint,
    Disjoint,
    GeneralizedGeodesic,
    HalfTurn,
    InteriorPoint,
    PointHit,
    ProperGeodesic,
    SharedEnd,
    chordal,
    compose_half_turns,
    hyp_dist,
    intersect,
    involution_line,
    position_on_line,
    same_geodesic,
)
from .hexagon import HexagonConfig, NotStopping, StoppingClass, classify_stopping
from .matrices import Elliptic, IsometryMatrix, classify, is_primitive, rational_power
from .tolerances import DEFAULT_TOL, Tolerances

OUTCOME_FREE = "discrete-free"
OUTCOME_NOT_FREE = "discrete-not-free"
OUTCOME_NOT_DISCRETE = "not-discrete"
OUTCOME_NEEDS_ELLIPTIC = "needs-elliptic-algorithm"

_SEVERITY = {
    OUTCOME_FREE: 0,
    OUTCOME_NOT_FREE: 1,
    OUTCOME_NEEDS_ELLIPTIC: 2,
    OUTCOME_NOT_DISCRETE: 3,
}


class ExitKind(Enum):
    AX_Y = "interior-ax-Y"
    L_Y = "interior-l-Y"
    AX_XINV_Y = "interior-ax-XinvY"
    VERTEX_AXY_LY = "vertex-axY-lY"
    VERTEX_LY_AXXINVY = "vertex-lY-axXinvY"
    CLOSURE = "closure"


@dataclass(frozen=True)
class ExitSide:
    kind: ExitKind
    boundary_vertex: bool = False
    borderline: bool = False


@dataclass(frozen=True)
class FanLine:
    s: int
    line: ProperGeodesic
    exit: ExitSide


@dataclass(frozen=True)
class RootLineFan:
    base: HexagonConfig
    role: str
    n: int
    s_max: int
    lines: tuple
    splitting: tuple  # pairs (s, s+1) where the exit side jumps


@dataclass(frozen=True)
class Verdict:
    outcome: str
    clause: str
    flags: tuple = ()
    reduced_pair: tuple | None = None
    # context carried for the cross-checker; not part of the wire format
    hexagon: HexagonConfig | None = None
    role: str | None = None
    num: int | None = None
    den: int | None = None
    fan: RootLineFan | None = None
    torsion_element: IsometryMatrix | None = None
    certificate_triples: tuple = ()

    def to_json_dict(self) -> dict:
        out = {"outcome": self.outcome, "clause": self.clause, "flags": list(self.flags)}
        if self.reduced_pair is not None:
            out["reduced_pair"] = [m.to_list() for m in self.reduced_pair]
        return out


@dataclass(frozen=True)
class PowerReduction:
    w: int
    r: int


def reduce_rational_power(s: int, n: int) -> PowerReduction:
    """Split an exponent s/n > 1 as s = w*n + r; the adjunction problem is
    then rebuilt on (Y, X^w) with the root r/n."""
    if s < 1 or n < 1:
        raise ValueError("exponents must be positive")
    return PowerReduction(w=s // n, r=s % n)


# -- role plumbing ---------------------------------------------------------------


@dataclass(frozen=True)
class _View:
    """Hexagon sides relabeled so the rooted generator is X."""

    x: IsometryMatrix
    y: IsometryMatrix
    prod: IsometryMatrix  # X^-1 Y
    ax_x: GeneralizedGeodesic
    ax_y: GeneralizedGeodesic
    ax_prod: GeneralizedGeodesic
    l_x: ProperGeodesic
    l_y: ProperGeodesic
    core: ProperGeodesic
    v1: object  # vertex Ax_Y ∩ L_Y
    v2: object  # vertex L_Y ∩ Ax_{X^-1 Y}
    segments: dict


def _segment(h: HexagonConfig, side_index: int):
    return (h.vertices[(side_index - 1) % 6], h.vertices[side_index])


def make_view(h: HexagonConfig, role: str) -> _View:
    if role == "B":
        return _View(
            x=h.gen_b,
            y=h.gen_a,
            prod=h.product.inverse(),
            ax_x=h.ax_b,
            ax_y=h.ax_a,
            ax_prod=h.ax_prod,
            l_x=h.l_b,
            l_y=h.l_a,
            core=h.core,
            v1=h.vertices[5],
            v2=h.vertices[4],
            segments={
                "ax_y": _segment(h, 0),
                "l_y": _segment(h, 5),
                "ax_prod": _segment(h, 4),
                "core": _segment(h, 1),
                "l_x": _segment(h, 3),
            },
        )
    if role == "A":
        return _View(
            x=h.gen_a,
            y=h.gen_b,
            prod=h.product,
            ax_x=h.ax_a,
            ax_y=h.ax_b,
            ax_prod=h.ax_prod,
            l_x=h.l_a,
            l_y=h.l_b,
            core=h.core,
            v1=h.vertices[2],
            v2=h.vertices[3],
            segments={
                "ax_y": _segment(h, 2),
                "l_y": _segment(h, 3),
                "ax_prod": _segment(h, 4),
                "core": _segment(h, 1),
                "l_x": _segment(h, 5),
            },
        )
    raise ValueError(f"role must be 'A' or 'B', got {role!r}")


# -- exit classification ------------------------------------------------------------


def _incidence_score(line: ProperGeodesic, g: GeneralizedGeodesic) -> float:
    """|trace| of the product of unit encodings: 0 when perpendicular/through."""
    from .geodesics import _mul, _rep  # matrix plumbing shared with the geodesic module

    f = _mul(_rep(line), _rep(g))
    return abs(f[0] + f[3])


def _vertex_distance(p, q) -> float:
    """Distance between two vertex points, infinite across kinds."""
    p_c, q_c = isinstance(p, complex), isinstance(q, complex)
    if p_c != q_c:
        return math.inf
    if p_c:
        return hyp_dist(p, q)
    return chordal(p, q)


def _segment_margin(side: ProperGeodesic, seg, point) -> float:
    """How far inside the side's hexagon segment the point sits (arclength);
    negative values are off-segment."""
    lo = _seg_position(side, seg[0])
    hi = _seg_position(side, seg[1])
    if lo > hi:
        lo, hi = hi, lo
    t = _seg_position(side, point)
    return min(t - lo, hi - t)


def _seg_position(side: ProperGeodesic, v) -> float:
    if isinstance(v, complex):
        return position_on_line(side, v)
    if chordal(v, side.p) <= chordal(v, side.q):
        return -math.inf
    return math.inf


def exit_side(h: HexagonConfig, line: ProperGeodesic, tol: Tolerances = DEFAULT_TOL) -> ExitSide:
    """Classify where a line entering through the rooted axis leaves the hexagon.

    The rooted side is detected from the line itself: a fan line is
    perpendicular to (or passes through) exactly one of the two generator
    axes.  Exits through the core or the rooted half-turn side are impossible
    for admissible lines and raise GeometryViolation.
    """
    score_a = _incidence_score(line, h.ax_a)
    score_b = _incidence_score(line, h.ax_b)
    if min(score_a, score_b) > math.sqrt(tol.geo):
        raise GeometryViolation("line is not admissible for either generator axis")
    view = make_view(h, "B" if score_b <= score_a else "A")
    return _exit_side_view(view, line, tol)


def _exit_side_view(view: _View, line: ProperGeodesic, tol: Tolerances) -> ExitSide:
    if same_geodesic(line, view.l_x, tol):
        return ExitSide(kind=ExitKind.CLOSURE)

    eps = tol.vertex
    borderline = False
    hits = []  # (name, point, margin)
    for name, side in (("ax_y", view.ax_y), ("l_y", view.l_y), ("ax_prod", view.ax_prod)):
        if not isinstance(side, ProperGeodesic):
            continue
        r = intersect(line, side, tol)
        if isinstance(r, Disjoint):
            if r.distance < 10.0 * eps:
                borderline = True
            continue
        point = r.z if isinstance(r, PointHit) else r.p
        margin = _segment_margin(side, view.segments[name], point)
        if abs(margin) < 10.0 * eps:
            borderline = True
        if margin > -eps:
            hits.append((name, point, margin))

    # vertex proximity wins over interior exits
    best_vertex, best_d = None, math.inf
    for _, point, _ in hits:
        for vkind, vertex in (("v1", view.v1), ("v2", view.v2)):
            d = _vertex_distance(point, vertex)
            if d < best_d:
                best_vertex, best_d = (vkind, vertex), d
    # a line through a degenerate axis-point hits the merged vertex directly
    for vkind, side in (("v1", view.ax_y), ("v2", view.ax_prod)):
        if isinstance(side, ProperGeodesic):
            continue
        target = side.z if isinstance(side, InteriorPoint) else side.p
        r = intersect(line, side, tol)
        if not isinstance(r, Disjoint):
            d = 0.0
            if d < best_d:
                best_vertex, best_d = ((vkind, target), d)

    if 0.1 * eps < best_d < 10.0 * eps:
        borderline = True
    if best_d < eps:
        vkind, vertex = best_vertex
        on_boundary = not isinstance(vertex, complex)
        kind = ExitKind.VERTEX_AXY_LY if vkind == "v1" else ExitKind.VERTEX_LY_AXXINVY
        _check_impossible(view, line, tol)
        return ExitSide(kind=kind, boundary_vertex=on_boundary, borderline=borderline)

    on_segment = [hit for hit in hits if hit[2] > -eps]
    if len(on_segment) != 1:
        raise GeometryViolation(
            f"expected exactly one exit, found {[hit[0] for hit in on_segment]}"
        )
    name = on_segment[0][0]
    kind = {"ax_y": ExitKind.AX_Y, "l_y": ExitKind.L_Y, "ax_prod": ExitKind.AX_XINV_Y}[name]
    _check_impossible(view, line, tol)
    return ExitSide(kind=kind, borderline=borderline)


def _check_impossible(view: _View, line: ProperGeodesic, tol: Tolerances) -> None:
    """A fan line can never leave through the core or the rooted half-turn side."""
    for name, side in (("core", view.core), ("l_x", view.l_x)):
        r = intersect(line, side, tol)
        if isinstance(r, PointHit):
            if _segment_margin(side, view.segments[name], r.z) > tol.vertex:
                raise GeometryViolation(f"fan line crosses the {name} side")


# -- fan construction ----------------------------------------------------------------


def root_line_fan(
    h: HexagonConfig, role: str, s_max: int, n: int, tol: Tolerances = DEFAULT_TOL
) -> RootLineFan:
    """Fan of half-turn lines for X^(s/n), s = 1..s_max, with exit sides and
    splitting pairs (consecutive exponents whose exits jump sides)."""
    if not (1 <= s_max <= n):
        raise ValueError("need 1 <= s_max <= n")
    stopping = classify_stopping(h, tol)
    if isinstance(stopping, NotStopping):
        raise NotStoppingInput(stopping.reason)
    view = make_view(h, role)
    lines = []
    for s in range(1, s_max + 1):
        xsn = rational_power(view.x, s, n, tol)
        line = involution_line(view.core, xsn, tol)
        rec = compose_half_turns(HalfTurn(view.core), HalfTurn(line), tol)
        if rec.dist_mod_sign(xsn) > 1e5 * tol.alg:
            raise GeometryViolation("fan line fails the half-turn factorization")
        lines.append(FanLine(s=s, line=line, exit=_exit_side_view(view, line, tol)))
    if s_max == n and not same_geodesic(lines[-1].line, view.l_x, tol):
        raise GeometryViolation("fan does not close on the rooted half-turn side")
    splitting = tuple(
        (fl.s, nxt.s)
        for fl, nxt in zip(lines, lines[1:])
        if _effective_exit(fl.exit) != _effective_exit(nxt.exit)
    )
    return RootLineFan(base=h, role=role, n=n, s_max=s_max, lines=tuple(lines), splitting=splitting)


def _effective_exit(e: ExitSide) -> ExitKind:
    # the closing line s = n sits on L_X, whose far vertex lies on Ax_{X^-1 Y}
    return ExitKind.AX_XINV_Y if e.kind == ExitKind.CLOSURE else e.kind


_EXIT_ORDER = {
    ExitKind.AX_Y: 0,
    ExitKind.VERTEX_AXY_LY: 1,
    ExitKind.L_Y: 2,
    ExitKind.VERTEX_LY_AXXINVY: 3,
    ExitKind.AX_XINV_Y: 4,
    ExitKind.CLOSURE: 4,
}


# -- the decision ---------------------------------------------------------------------


def decide_adjoin(
    h: HexagonConfig,
    role: str,
    s: int,
    n: int,
    tol: Tolerances = DEFAULT_TOL,
    ie_mode: str = "general",
) -> Verdict:
    """Decide discreteness of the group generated by Y and X^(1/n), where X is
    the rooted generator selected by `role`.

    Adjoining X^(s/n) with gcd(s, n) = 1 and s <= n generates the same group
    as adjoining X^(1/n), so the verdict depends only on n after reduction.
    For s/n > 1 use decide_rational_adjunction, which rebuilds on a power of
    the rooted generator first.
    """
    g = math.gcd(s, n)
    s, n = s // g, n // g
    if s > n:
        raise ValueError("s/n > 1: reduce with decide_rational_adjunction first")
    stopping = classify_stopping(h, tol)
    if isinstance(stopping, NotStopping):
        raise NotStoppingInput(stopping.reason)
    view = make_view(h, role)
    cls_x = classify(view.x, tol)
    cls_prod = classify(view.prod, tol)
    flags: list[str] = []

    if n == 1:
        # identity root: the group is unchanged
        torsion = _first_torsion(view, tol)
        outcome = OUTCOME_FREE if torsion is None else OUTCOME_NOT_FREE
        return Verdict(
            outcome=outcome,
            clause="Thm8.1-base",
            flags=(),
            hexagon=h,
            role=role,
            num=s,
            den=n,
            torsion_element=torsion,
        )

    fan = root_line_fan(h, role, n, n, tol)
    interior = fan.lines[: n - 1]
    for fl in interior:
        if fl.exit.borderline:
            flags.append(f"borderline-incidence-s{fl.s}")
    orders = [_EXIT_ORDER[fl.exit.kind] for fl in interior]
    if any(a > b for a, b in zip(orders, orders[1:])):
        flags.append("non-monotone-exits")

    contributions: list[Verdict] = []
    for fl in interior:
        kind = fl.exit.kind
        if kind in (ExitKind.AX_Y, ExitKind.AX_XINV_Y):
            continue
        if kind in (ExitKind.VERTEX_AXY_LY, ExitKind.VERTEX_LY_AXXINVY) and fl.exit.boundary_vertex:
            contributions.append(Verdict(outcome=OUTCOME_FREE, clause="Thm8.1-II-boundary"))
            continue
        vertex_hit = kind in (ExitKind.VERTEX_AXY_LY, ExitKind.VERTEX_LY_AXXINVY)
        contributions.append(_elliptic_incidence(view, fl, n, vertex_hit, flags, tol))

    pattern = _pattern_verdict(view, cls_prod, interior, fan, ie_mode, tol)
    contributions.append(pattern)

    final = max(contributions, key=lambda v: _SEVERITY[v.outcome])
    outcome, clause = final.outcome, final.clause
    torsion = final.torsion_element
    if isinstance(cls_x, Elliptic) and outcome == OUTCOME_FREE:
        # a root of an elliptic keeps torsion in the group
        outcome = OUTCOME_NOT_FREE
        clause = clause + "+Thm8.2-IV"
        torsion = rational_power(view.x, 1, n, tol)
    cls_y = classify(view.y, tol)
    if isinstance(cls_y, Elliptic) and outcome == OUTCOME_FREE:
        # the unrooted generator itself is torsion
        outcome = OUTCOME_NOT_FREE
        flags.append("torsion-in-unrooted-generator")
        torsion = view.y

    return Verdict(
        outcome=outcome,
        clause=clause,
        flags=tuple(flags),
        reduced_pair=final.reduced_pair,
        hexagon=h,
        role=role,
        num=s,
        den=n,
        fan=fan,
        torsion_element=torsion,
        certificate_triples=_certificates(view, fan, interior),
    )


def _first_torsion(view: _View, tol: Tolerances) -> IsometryMatrix | None:
    for m in (view.x, view.y, view.prod):
        if isinstance(classify(m, tol), Elliptic):
            return m
    return None


def _elliptic_incidence(
    view: _View, fl: FanLine, n: int, vertex_hit: bool, flags: list, tol: Tolerances
) -> Verdict:
    """An incidence of a fan line with L_Y: the rotation H_fan H_LY decides."""
    rotation = compose_half_turns(HalfTurn(fl.line), HalfTurn(view.l_y), tol)
    cls = classify(rotation, tol)
    reduced = (view.y, rational_power(view.x, fl.s, n, tol))
    clause_discrete = "Thm8.1-II-interior-primitive" if vertex_hit else "Thm8.1-3-primitive"
    clause_refer = "Thm8.1-II-interior-nonprimitive" if vertex_hit else "Thm8.1-3-nonprimitive"
    clause_infinite = (
        "Thm8.1-II-interior-infinite-order" if vertex_hit else "Thm8.1-3-infinite-order"
    )
    if not isinstance(cls, Elliptic):
        # tangency at the tolerance floor: treat as a boundary contact
        flags.append(f"degenerate-l-Y-contact-s{fl.s}")
        return Verdict(outcome=OUTCOME_FREE, clause="Thm8.1-II-boundary")
    try:
        primitive = is_primitive(cls)
    except UnresolvedOrder:
        flags.append("unresolved-order")
        return Verdict(
            outcome=OUTCOME_NOT_DISCRETE,
            clause=clause_infinite,
            torsion_element=rotation,
            reduced_pair=reduced,
        )
    if primitive:
        return Verdict(outcome=OUTCOME_NOT_FREE, clause=clause_discrete, torsion_element=rotation)
    if cls.finite_order is None:
        return Verdict(
            outcome=OUTCOME_NOT_DISCRETE,
            clause=clause_infinite,
            torsion_element=rotation,
            reduced_pair=reduced,
        )
    return Verdict(outcome=OUTCOME_NEEDS_ELLIPTIC, clause=clause_refer, reduced_pair=reduced)


def _pattern_verdict(
    view: _View,
    cls_prod,
    interior,
    fan: RootLineFan,
    ie_mode: str,
    tol: Tolerances,
) -> Verdict:
    """Verdict for the clean exit pattern (only axis-side exits considered)."""
    exits = [fl.exit.kind for fl in interior]
    clean = [k for k in exits if k in (ExitKind.AX_Y, ExitKind.AX_XINV_Y)]
    all_clean = len(clean) == len(exits)
    if cls_prod.kind == "hyperbolic":
        if all_clean and clean:
            if all(k == ExitKind.AX_XINV_Y for k in clean):
                return Verdict(outcome=OUTCOME_FREE, clause="Thm8.2-IH-1")
            return Verdict(outcome=OUTCOME_FREE, clause="Thm8.2-IH-2")
        if all_clean:
            return Verdict(outcome=OUTCOME_FREE, clause="Thm8.2-IH-1")
        return Verdict(outcome=OUTCOME_FREE, clause="Thm8.2-IH")
    if cls_prod.kind == "parabolic":
        return Verdict(outcome=OUTCOME_FREE, clause="Thm8.2-IP")
    # product elliptic: the group keeps its torsion, freeness is impossible
    if ie_mode == "section7":
        meets_ax_y = any(k == ExitKind.AX_Y for k in exits)
        if not meets_ax_y and all(
            fl.exit.kind != ExitKind.VERTEX_LY_AXXINVY for fl in interior
        ):
            return Verdict(
                outcome=OUTCOME_NOT_FREE, clause="Thm7.1-E-i", torsion_element=view.prod
            )
        return Verdict(
            outcome=OUTCOME_NEEDS_ELLIPTIC,
            clause="Thm7.1-E-else",
            reduced_pair=(view.y, view.x),
        )
    return Verdict(outcome=OUTCOME_NOT_FREE, clause="Thm8.2-IE", torsion_element=view.prod)


def _certificates(view: _View, fan: RootLineFan, interior) -> tuple:
    """Half-turn triples whose bounded region certifies a free verdict.

    With fan_0 = core and fan_n = L_X, a clean jump between consecutive lines
    j, j+1 makes (fan_j, fan_{j+1}, L_Y) a generating triple of the adjoined
    group's reflection overgroup.
    """
    chain = [view.core] + [fl.line for fl in fan.lines]
    last_ax_y = 0
    for fl in interior:
        if fl.exit.kind == ExitKind.AX_Y:
            last_ax_y = fl.s
    if last_ax_y + 1 >= len(chain):
        return ()
    return ((chain[last_ax_y], chain[last_ax_y + 1], view.l_y),)


# -- top-level driver -----------------------------------------------------------------


def decide_rational_adjunction(
    a: IsometryMatrix,
    b: IsometryMatrix,
    role: str,
    num: int,
    den: int,
    tol: Tolerances = DEFAULT_TOL,
    ie_mode: str = "general",
) -> Verdict:
    """Decide adjunction of X^(num/den) to the group generated by (a, b).

    Exponents above 1 are reduced by num = w*den + r: the problem is rebuilt
    on the pair with X replaced by X^w and the root r/den; discreteness of the
    powered pair is inherited from the stopping pair.
    """
    from .hexagon import build_hexagon  # local import to keep module load acyclic

    if role not in ("A", "B"):
        raise ValueError("role must be 'A' or 'B'")
    if num < 1 or den < 1:
        raise ValueError("root exponents must be positive")
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if num <= den:
        h = build_hexagon(a, b, tol)
        return decide_adjoin(h, role, num, den, tol, ie_mode)

    red = reduce_rational_power(num, den)
    x = a if role == "A" else b
    if red.r == 0:
        # pure power: a subgroup of the base stopping group
        h = build_hexagon(a, b, tol)
        stopping = classify_stopping(h, tol)
        if isinstance(stopping, NotStopping):
            raise NotStoppingInput(stopping.reason)
        xw = x.power(red.w)
        other = b if role == "A" else a
        torsion = next(
            (m for m in (xw, other) if isinstance(classify(m, tol), Elliptic)), None
        )
        flags: tuple = ("inherited-discreteness",) if "E" in stopping.tag else ()
        if xw.is_identity(tol):
            flags = flags + ("degenerate-power",)
        return Verdict(
            outcome=OUTCOME_FREE if torsion is None else OUTCOME_NOT_FREE,
            clause="Thm8.3-power",
            flags=flags,
            hexagon=h,
            role=role,
            num=num,
            den=den,
            torsion_element=torsion,
        )
    xw = x.power(red.w)
    a2, b2 = (xw, b) if role == "A" else (a, xw)
    h2 = build_hexagon(a2, b2, tol)
    inner = decide_adjoin(h2, role, red.r, den, tol, ie_mode)
    return Verdict(
        outcome=inner.outcome,
        clause="Thm8.3+" + inner.clause,
        flags=inner.flags + (f"power-reduced-w{red.w}",),
        reduced_pair=inner.reduced_pair,
        hexagon=inner.hexagon,
        role=role,
        num=red.r,
        den=den,
        fan=inner.fan,
        torsion_element=inner.torsion_element,
        certificate_triples=inner.certificate_triples,
    )
