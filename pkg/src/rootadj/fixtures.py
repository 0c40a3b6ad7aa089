"""Constructors for stopping configurations.

Each of the eleven class tags gets a concrete generator pair built from
half-turn line placements: disjoint lines for hyperbolic members, shared ideal
ends for parabolic members, crossings at half a primitive angle for elliptic
members.  Rotation-direction sign choices are resolved by searching the finite
set of combinations for the one the recognizer accepts with the expected tag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct

from .geodesics import (
    HalfTurn,
    ProperGeodesic,
    compose_half_turns,
    perpendicular_at,
    point_on_line,
)
from .hexagon import StoppingClass, build_hexagon, classify_stopping, cyclic_rotate
from .matrices import IsometryMatrix
from .tolerances import DEFAULT_TOL, Tolerances

ALL_TAGS = ("HHH", "HPH", "PPH", "PPP", "HEH", "HEP", "PEH", "PEP", "EEH", "EEP", "EEE")

EXPECTED_SHAPE = {
    "HHH": "hexagon",
    "HPH": "pentagon",
    "PPH": "quadrilateral",
    "PPP": "triangle",
    "HEH": "pentagon",
    "HEP": "quadrilateral",
    "PEH": "quadrilateral",
    "PEP": "triangle",
    "EEH": "quadrilateral",
    "EEP": "triangle",
    "EEE": "triangle",
}


@dataclass(frozen=True)
class Fixture:
    tag: str
    a: IsometryMatrix
    b: IsometryMatrix
    l_a: ProperGeodesic
    core: ProperGeodesic
    l_b: ProperGeodesic


def pair_from_lines(core: ProperGeodesic, l_a: ProperGeodesic, l_b: ProperGeodesic):
    """Generators A = H_core H_la, B = H_core H_lb."""
    a = compose_half_turns(HalfTurn(core), HalfTurn(l_a))
    b = compose_half_turns(HalfTurn(core), HalfTurn(l_b))
    return a, b


def rotation_about(z: complex, theta: float) -> IsometryMatrix:
    """Rotation by theta about the interior point z."""
    x, y = z.real, z.imag
    ry = math.sqrt(y)
    t = theta / 2.0
    ct, st = math.cos(t), math.sin(t)
    ta, tb, td = ry, x / ry, 1.0 / ry
    ra, rb = ta * ct + tb * st, -ta * st + tb * ct
    rc, rd = td * st, td * ct
    return IsometryMatrix(ra * td, -ra * tb + rb * ta, rc * td, -rc * tb + rd * ta)


def translation_along(line: ProperGeodesic, length: float) -> IsometryMatrix:
    """Hyperbolic translating by `length` along the oriented line."""
    z1 = point_on_line(line, 0.0)
    z2 = point_on_line(line, length / 2.0)
    m1 = perpendicular_at(line, z1)
    m2 = perpendicular_at(line, z2)
    return compose_half_turns(HalfTurn(m2), HalfTurn(m1))


def rotate_line(line: ProperGeodesic, z: complex, theta: float) -> ProperGeodesic:
    """Image of `line` under the rotation by theta about z (on the line)."""
    r = rotation_about(z, theta)
    return ProperGeodesic(r.apply_boundary(line.p), r.apply_boundary(line.q))


def _build(tag: str, core, l_a, l_b, tol: Tolerances, rotate: int = 0) -> Fixture | None:
    try:
        a, b = pair_from_lines(core, l_a, l_b)
        h = build_hexagon(a, b, tol)
        if rotate:
            h = cyclic_rotate(h, rotate, tol)
    except Exception:
        return None
    result = classify_stopping(h, tol)
    if isinstance(result, StoppingClass) and result.tag == tag:
        return Fixture(tag=tag, a=h.gen_a, b=h.gen_b, l_a=h.l_a, core=h.core, l_b=h.l_b)
    return None


def stopping_fixture(tag: str, tol: Tolerances = DEFAULT_TOL) -> Fixture:
    """A concrete stopping configuration with the given ordered class tag."""
    P = ProperGeodesic
    core = P(-1.0, 1.0)
    candidates: list[tuple] = []
    if tag == "HHH":
        candidates = [(P(-0.5, 0.5), P(-3.0, -1.0), P(1.0, 3.0))]
    elif tag == "HPH":
        candidates = [(P(-0.5, 0.5), P(-3.0, -1.0), P(0.5, 3.0))]
    elif tag == "PPH":
        candidates = [(P(-0.5, 0.5), P(-3.0, -0.5), P(0.5, 3.0))]
    elif tag == "PPP":
        candidates = [(P(1.0, 2.0), P(0.0, 1.0), P(0.0, 2.0))]
    elif tag in ("HEH", "HEP", "PEH"):
        # the elliptic sits in the middle slot; build the configuration with
        # the crossing at the product slot instead and re-root by one step
        for sgn in (1.0, -1.0):
            if tag == "HEH":
                # source EHH (rotate 2): core x l_a elliptic at pi/4, with l_b
                # tucked into the narrow wedge so the hexagon fills it
                cr = rotate_line(core, 1j, sgn * math.pi / 4.0)
                l_b = P(0.5, 0.9) if sgn > 0 else P(-0.9, -0.5)
                candidates.append((core, cr, l_b, 2))
            elif tag == "HEP":
                # source PHE (rotate 1): core shares an end with l_a, l_a x l_b elliptic
                shared = P(-3.0, -0.5)
                cr2 = rotate_line(shared, complex(-1.75, 1.25), sgn * math.pi / 4.0)
                candidates.append((P(-0.5, 0.5), shared, cr2, 1))
                # source EPH (rotate 2): core x l_a elliptic, core shares an end with l_b
                cr3 = rotate_line(core, 1j, sgn * math.pi / 4.0)
                candidates.append((core, cr3, P(1.0, 6.0), 2))
                candidates.append((core, cr3, P(-6.0, -1.0), 2))
            else:  # PEH from source HPE (rotate 1): core/l_b share an end, l_a x l_b
                shared = P(0.5, 3.0)
                cr2 = rotate_line(shared, complex(1.75, 1.25), sgn * math.pi / 4.0)
                candidates.append((P(-0.5, 0.5), cr2, shared, 1))
                # source EHP (rotate 2): core x l_a elliptic, l_a shares an end with l_b
                cr3 = rotate_line(core, 1j, sgn * math.pi / 4.0)
                u1, u2 = min(cr3.p, cr3.q), max(cr3.p, cr3.q)
                for end, far in ((u1, u1 - 5.0), (u2, u2 + 5.0)):
                    candidates.append((core, cr3, P(*sorted((end, far))), 2))
    elif tag == "PEP":
        for sgn in (1.0, -1.0):
            l_b = rotate_line(core, 1j, sgn * math.pi / 4.0)
            u1, u2 = min(l_b.p, l_b.q), max(l_b.p, l_b.q)
            for end, shared in ((u1, -1.0), (u2, 1.0), (u1, 1.0), (u2, -1.0)):
                if abs(end) > 1.0:
                    candidates.append((core, P(*sorted((end, shared))), l_b))
    elif tag in ("EEH", "EEP", "EEE"):
        alpha, beta = math.pi / 3.0, math.pi / 4.0
        gamma = math.pi / 7.0 if tag == "EEE" else 0.0
        cosh_d = (math.cos(alpha) * math.cos(beta) + math.cos(gamma)) / (
            math.sin(alpha) * math.sin(beta)
        )
        d = math.acosh(cosh_d)
        if tag == "EEH":
            d += 0.8
        z1 = point_on_line(core, -d / 2.0)
        z2 = point_on_line(core, d / 2.0)
        for s1, s2 in iproduct((1.0, -1.0), repeat=2):
            l_a = rotate_line(core, z1, s1 * alpha)
            l_b = rotate_line(core, z2, s2 * beta)
            candidates.append((core, l_a, l_b))
    else:
        raise ValueError(f"unknown stopping tag {tag!r}")

    for cand in candidates:
        core_c, la_c, lb_c = cand[0], cand[1], cand[2]
        rotate = cand[3] if len(cand) > 3 else 0
        fixture = _build(tag, core_c, la_c, lb_c, tol, rotate)
        if fixture is not None:
            return fixture
    raise RuntimeError(f"no candidate placement realized stopping tag {tag}")


def all_fixtures(tol: Tolerances = DEFAULT_TOL) -> dict[str, Fixture]:
    return {tag: stopping_fixture(tag, tol) for tag in ALL_TAGS}


def random_hhh_pair(rng, tol: Tolerances = DEFAULT_TOL) -> Fixture:
    """Random HHH stopping configuration.

    Mixes side-by-side triples with nested wide-circle layouts; the latter
    produce square-root fan lines that cross the far half-turn side, so the
    corpus exercises every exit pattern.
    """
    P = ProperGeodesic
    while True:
        if rng.random() < 0.7:
            xs = sorted(rng.uniform(-5.0, 5.0) for _ in range(6))
            # keep radii and gaps moderate so traces stay at desk scale
            if min(xs[i + 1] - xs[i] for i in range(5)) < 0.4:
                continue
            if xs[1] - xs[0] < 0.6 or xs[3] - xs[2] < 0.6 or xs[5] - xs[4] < 0.6:
                continue
            l_a, core, l_b = P(xs[0], xs[1]), P(xs[2], xs[3]), P(xs[4], xs[5])
        else:
            scale = rng.uniform(0.8, 2.0)
            core = P(-0.5 * scale, 0.5 * scale)
            l_a = P(rng.uniform(-4.0, -2.6) * scale, rng.uniform(-1.6, -0.9) * scale)
            u = rng.uniform(0.55, 0.95) * scale
            l_b = P(u, u + rng.uniform(3.0, 40.0) * scale)
        fixture = _build("HHH", core, l_a, l_b, tol)
        if fixture is not None:
            return fixture


# -- aimed incidence fixtures ---------------------------------------------------


def _phh_family(v: float, tol: Tolerances):
    """The one-parameter family used to aim a square-root fan line at L_Y."""
    P = ProperGeodesic
    core, l_a, l_b = P(0.0, 2.0), P(-4.0, 0.0), P(-20.0, v)
    a, b = pair_from_lines(core, l_a, l_b)
    h = build_hexagon(a, b, tol)
    if not isinstance(classify_stopping(h, tol), StoppingClass):
        return None
    return h


def _phh_rotation(v: float, tol: Tolerances):
    """Rotation magnitude of the elliptic cut out by the n = 2 fan line, or
    None when the line does not cross L_Y."""
    from .adjunction import ExitKind, root_line_fan
    from .matrices import rotation_angle

    h = _phh_family(v, tol)
    if h is None:
        return None, None
    fan = root_line_fan(h, "B", 2, 2, tol)
    fl = fan.lines[0]
    if fl.exit.kind != ExitKind.L_Y:
        return None, (h, fan)
    rot = compose_half_turns(HalfTurn(fl.line), HalfTurn(h.l_a), tol)
    return abs(rotation_angle(rot)), (h, fan)


def ly_crossing_fixture(target_rotation: float, tol: Tolerances = DEFAULT_TOL):
    """Stopping pair whose square-root fan line crosses L_Y with the given
    elliptic rotation magnitude (available range roughly (1.92, pi))."""
    lo, hi = -8.0, -4.05
    angle_lo, _ = _phh_rotation(lo, tol)
    angle_hi, _ = _phh_rotation(hi, tol)
    if angle_lo is None or angle_hi is None:
        raise RuntimeError("aimed family collapsed; no L_Y crossing at the endpoints")
    if not (min(angle_lo, angle_hi) <= target_rotation <= max(angle_lo, angle_hi)):
        raise ValueError(
            f"target rotation {target_rotation:.4f} outside achievable range "
            f"({min(angle_lo, angle_hi):.4f}, {max(angle_lo, angle_hi):.4f})"
        )
    for _ in range(200):
        mid = (lo + hi) / 2.0
        angle_mid, ctx = _phh_rotation(mid, tol)
        if angle_mid is None:
            raise RuntimeError("aimed family lost the L_Y crossing mid-bisection")
        if abs(angle_mid - target_rotation) < 1e-12:
            break
        if (angle_mid < target_rotation) == (angle_lo < target_rotation):
            lo, angle_lo = mid, angle_mid
        else:
            hi = mid
    h, fan = ctx
    return h


def ly_vertex_fixture(tol: Tolerances = DEFAULT_TOL):
    """Stopping pair whose square-root fan line passes through the interior
    vertex shared by L_Y and the product axis (within the vertex tolerance)."""
    from .adjunction import ExitKind, root_line_fan

    lo, hi = -8.0, -10.0  # L_Y crossing at lo, product-axis exit at hi
    for _ in range(80):
        mid = (lo + hi) / 2.0
        h = _phh_family(mid, tol)
        if h is None:
            raise RuntimeError("aimed family collapsed during vertex bisection")
        fan = root_line_fan(h, "B", 2, 2, tol)
        kind = fan.lines[0].exit.kind
        if kind == ExitKind.VERTEX_LY_AXXINVY:
            return h
        if kind == ExitKind.L_Y:
            lo = mid
        else:
            hi = mid
    raise RuntimeError("vertex bisection did not converge")
