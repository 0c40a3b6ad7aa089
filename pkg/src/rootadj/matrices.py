"""Plane hyperbolic isometries as determinant-one 2x2 real matrices modulo sign.

Matrices act on the upper half-plane by z -> (az + b)/(cz + d).  All equality
tests are modulo a global sign flip, and every matrix is stored in a canonical
lift: nonnegative trace when the trace is nonzero, otherwise first nonzero
entry positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLineMatrix, IdentityInput, NumericalDegeneracy, UnresolvedOrder
from .tolerances import DEFAULT_TOL, Tolerances

INF = math.inf

# Rational-angle recognition: a fraction p/q is accepted as the exact value of a
# computed rotation number only when it approximates far better than a generic
# continued-fraction convergent could (see recognize_rational).
RATIONAL_MAX_DEN = 10**6
RATIONAL_RESIDUAL = 1e-9
RATIONAL_STRENGTH = 1e-4
_PROBE_MAX_DEN = 10**7


def _norm4(a: float, b: float, c: float, d: float) -> float:
    return max(abs(a), abs(b), abs(c), abs(d))


@dataclass(frozen=True)
class IsometryMatrix:
    """Orientation-preserving isometry of the upper half-plane, det = +1, mod sign."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        prod1 = self.a * self.d
        prod2 = self.b * self.c
        det = prod1 - prod2
        if not math.isfinite(det) or det <= 0:
            raise ValueError(f"matrix determinant must be positive, got {det}")
        if abs(det - 1.0) <= 1e-10 * (abs(prod1) + abs(prod2) + 1.0):
            # already unimodular to within the cancellation noise of det itself;
            # rescaling here would inject that noise into the entries
            a, b, c, d = self.a, self.b, self.c, self.d
        else:
            s = 1.0 / math.sqrt(det)
            a, b, c, d = self.a * s, self.b * s, self.c * s, self.d * s
        tr = a + d
        if abs(tr) > DEFAULT_TOL.alg:
            flip = tr < 0
        else:
            first = next(x for x in (a, b, c, d) if abs(x) > DEFAULT_TOL.alg)
            flip = first < 0
        if flip:
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    # -- algebra ------------------------------------------------------------

    @property
    def trace(self) -> float:
        return self.a + self.d

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "IsometryMatrix") -> "IsometryMatrix":
        return IsometryMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IsometryMatrix":
        return IsometryMatrix(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "IsometryMatrix":
        if k < 0:
            return self.inverse().power(-k)
        result = IsometryMatrix(1.0, 0.0, 0.0, 1.0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def dist_mod_sign(self, other: "IsometryMatrix") -> float:
        """Max-entry distance to the closer of +other, -other."""
        plus = _norm4(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)
        minus = _norm4(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)
        return min(plus, minus)

    def equiv(self, other: "IsometryMatrix", tol: Tolerances = DEFAULT_TOL) -> bool:
        return self.dist_mod_sign(other) < tol.alg

    def is_identity(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return self.dist_mod_sign(IDENTITY) < tol.alg

    # -- action on the closed half-plane -------------------------------------

    def apply_boundary(self, x: float) -> float:
        """Image of a boundary point (real number or INF)."""
        if math.isinf(x):
            return self.a / self.c if abs(self.c) > 0 else INF
        denom = self.c * x + self.d
        if denom == 0.0:
            return INF
        return (self.a * x + self.b) / denom

    def apply_interior(self, z: complex) -> complex:
        denom = self.c * z + self.d
        return (self.a * z + self.b) / denom

    def fixed_points(self) -> tuple:
        """Fixed points of the Mobius action: a pair of boundary reals for a
        hyperbolic, a single boundary real for a parabolic, or one interior
        complex point for an elliptic.  Solves c z^2 + (d - a) z - b = 0."""
        a, b, c, d = self.entries()
        tr = a + d
        disc = tr * tr - 4.0
        if c == 0.0:
            # infinity is fixed; the other root is b/(d - a) when a != d
            if disc > 1e-300 and a != d:
                return (b / (d - a), INF)
            return (INF,)
        if disc > 0:
            # stable quadratic: avoid cancellation between (a - d) and the radical
            r = math.sqrt(disc)
            q = (a - d) + math.copysign(r, a - d) if a != d else r
            z1 = q / (2.0 * c)
            z2 = -b / (c * z1) if z1 != 0.0 else (a - d) / c
            return (z1, z2) if z1 <= z2 else (z2, z1)
        if disc < 0:
            s = 1.0 if c > 0 else -1.0
            return (complex((a - d) / (2 * c), s * math.sqrt(-disc) / (2 * c)),)
        return ((a - d) / (2 * c),)

    def to_list(self) -> list[float]:
        return [self.a, self.b, self.c, self.d]

    @classmethod
    def from_list(cls, values) -> "IsometryMatrix":
        if len(values) != 4:
            raise ValueError("matrix must have exactly four entries [a, b, c, d]")
        return cls(float(values[0]), float(values[1]), float(values[2]), float(values[3]))

    def __repr__(self):
        return f"IsometryMatrix({self.a:.12g}, {self.b:.12g}, {self.c:.12g}, {self.d:.12g})"


IDENTITY = IsometryMatrix(1.0, 0.0, 0.0, 1.0)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class Hyperbolic:
    translation_length: float

    kind = "hyperbolic"


@dataclass(frozen=True)
class Parabolic:
    kind = "parabolic"


@dataclass(frozen=True)
class Elliptic:
    rotation_angle: float
    finite_order: int | None = None

    kind = "elliptic"


@dataclass(frozen=True)
class Identity:
    kind = "identity"


ElementClass = Hyperbolic | Parabolic | Elliptic | Identity


def recognize_rational(x: float, max_den: int = RATIONAL_MAX_DEN) -> Fraction | None:
    """Best rational p/q, q <= max_den, if x is numerically that rational.

    A convergent of any real number eventually lands within any fixed residual,
    so closeness alone cannot distinguish a rational input from an irrational
    one.  The fraction is accepted only when the residual is both below
    RATIONAL_RESIDUAL and far below the 1/q^2 scale of a generic convergent.
    """
    f = Fraction(x).limit_denominator(max_den)
    residual = abs(x - float(f))
    if residual < RATIONAL_RESIDUAL and residual * f.denominator**2 < RATIONAL_STRENGTH:
        return f
    return None


def _probe_beyond_bound(x: float) -> bool:
    """True if x is recognized as rational only with a denominator just past
    the bound.  The probe window is narrow: float64 cannot distinguish a true
    rational from an irrational once the denominator nears 1e8, because every
    float is exactly rational at denominator 2^53 and admits spuriously good
    approximants below that scale."""
    f = Fraction(x).limit_denominator(_PROBE_MAX_DEN)
    if f.denominator <= RATIONAL_MAX_DEN:
        return False
    residual = abs(x - float(f))
    return residual < 3e-15 and residual * f.denominator**2 < 3e-3


def rotation_angle(m: IsometryMatrix) -> float:
    """Signed rotation angle in (-pi, pi] of an elliptic element.

    Computed from the derivative of the Mobius map at the fixed point; the
    standard rotation matrix [[cos t, -sin t], [sin t, cos t]] gets angle 2t.
    """
    tr = m.trace  # canonical lift has tr >= 0, so |tr| < 2 here
    s = 1.0 if m.c > 0 else -1.0
    angle = 2.0 * math.atan2(s * math.sqrt(max(4.0 - tr * tr, 0.0)), tr)
    if angle <= -math.pi:
        angle = math.pi  # -pi and pi are the same half-turn
    return angle


def classify(m: IsometryMatrix, tol: Tolerances = DEFAULT_TOL) -> ElementClass:
    """Hyperbolic / Parabolic / Elliptic / Identity by trace thresholds."""
    if m.is_identity(tol):
        return Identity()
    t = abs(m.trace)
    if t > 2.0 + tol.cls:
        return Hyperbolic(translation_length=2.0 * math.acosh(t / 2.0))
    if t >= 2.0 - tol.cls:
        return Parabolic()
    angle = rotation_angle(m)
    frac = recognize_rational(angle / (2.0 * math.pi))
    order = frac.denominator if frac is not None else None
    return Elliptic(rotation_angle=angle, finite_order=order)


def is_primitive(e: Elliptic) -> bool:
    """True iff the rotation is minimal in the cyclic group it generates.

    The rotation number must be recognized as +-1/k; elements that generate the
    cyclic group through a non-minimal rotation (angle 2*pi*p/q, |p| > 1) are
    not primitive.  Raises UnresolvedOrder when the angle looks rational only
    beyond the denominator bound, so callers can treat the element as infinite
    order while flagging the uncertainty.
    """
    x = e.rotation_angle / (2.0 * math.pi)
    frac = recognize_rational(x)
    if frac is None:
        if _probe_beyond_bound(x):
            raise UnresolvedOrder(
                f"rotation number {x!r} is near-rational only beyond denominator {RATIONAL_MAX_DEN}"
            )
        return False
    return abs(frac.numerator) == 1


# -- roots and powers ----------------------------------------------------------


def nth_root(m: IsometryMatrix, n: int, tol: Tolerances = DEFAULT_TOL) -> IsometryMatrix:
    """The geometrically natural n-th root: same axis or fixed point, with
    translation length, parabolic parameter, or rotation angle divided by n."""
    if n < 1:
        raise ValueError("root index must be a positive integer")
    if n == 1:
        return m
    cls = classify(m, tol)
    if isinstance(cls, Identity):
        raise IdentityInput("cannot take a root of the identity")
    if isinstance(cls, Hyperbolic):
        root = _hyperbolic_root(m, n)
    elif isinstance(cls, Parabolic):
        # canonical lift has trace +2; m = I + N with N^2 = 0
        root = IsometryMatrix(
            1.0 + (m.a - 1.0) / n, m.b / n, m.c / n, 1.0 + (m.d - 1.0) / n
        )
    else:
        root = _elliptic_root(m, cls.rotation_angle, n)
    err = root.power(n).dist_mod_sign(m)
    if err > 1000.0 * tol.alg:
        raise NumericalDegeneracy(f"n-th root verification failed: residual {err:.3e}")
    return root


def _hyperbolic_root(m: IsometryMatrix, n: int) -> IsometryMatrix:
    # spectral projectors: m = mu1*P1 + mu2*P2 with mu1 > 1 > mu2 > 0
    tr = m.trace
    disc = math.sqrt(tr * tr - 4.0)
    mu1 = (tr + disc) / 2.0
    mu2 = (tr - disc) / 2.0
    r1 = math.exp(math.log(mu1) / n)
    r2 = math.exp(math.log(mu2) / n)
    # R = r1*(m - mu2 I)/(mu1 - mu2) + r2*(m - mu1 I)/(mu2 - mu1)
    k1 = (r1 - r2) / disc
    k2 = (r2 * mu1 - r1 * mu2) / disc
    return IsometryMatrix(k1 * m.a + k2, k1 * m.b, k1 * m.c, k1 * m.d + k2)


def _elliptic_root(m: IsometryMatrix, angle: float, n: int) -> IsometryMatrix:
    (z0,) = m.fixed_points()
    x, y = z0.real, z0.imag
    t = angle / (2.0 * n)
    ct, st = math.cos(t), math.sin(t)
    # conjugate the standard rotation about i by T = [[sqrt(y), x/sqrt(y)], [0, 1/sqrt(y)]]
    ry = math.sqrt(y)
    ta, tb, tc, td = ry, x / ry, 0.0, 1.0 / ry
    # T * rot(t) * T^-1
    ra = ta * ct + tb * st
    rb = -ta * st + tb * ct
    rc = tc * ct + td * st
    rd = -tc * st + td * ct
    return IsometryMatrix(ra * td - rb * tc, -ra * tb + rb * ta, rc * td - rd * tc, -rc * tb + rd * ta)


def rational_power(m: IsometryMatrix, s: int, n: int, tol: Tolerances = DEFAULT_TOL) -> IsometryMatrix:
    """m^(s/n) = (n-th root of m)^s, with the fraction reduced first."""
    if s < 1 or n < 1:
        raise ValueError("rational power needs positive integers s, n")
    g = math.gcd(s, n)
    s, n = s // g, n // g
    if n == 1:
        return m.power(s)
    return nth_root(m, n, tol).power(s)


# -- line matrices -------------------------------------------------------------


def line_matrix_entries(m: IsometryMatrix) -> tuple[float, float, float, float]:
    """Raw entries of m - m^-1 = 2m - tr(m) I (traceless, unnormalized)."""
    tr = m.trace
    return (2.0 * m.a - tr, 2.0 * m.b, 2.0 * m.c, 2.0 * m.d - tr)


@dataclass(frozen=True)
class LineMatrixRep:
    """Traceless matrix m - m^-1, scaled so the largest-magnitude entry is 1."""

    a: float
    b: float
    c: float
    d: float

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def line_matrix(m: IsometryMatrix, tol: Tolerances = DEFAULT_TOL) -> LineMatrixRep:
    """Line matrix of m; its fixed-point set is the axis of m."""
    la, lb, lc, ld = line_matrix_entries(m)
    norm = _norm4(la, lb, lc, ld)
    if norm < tol.alg:
        raise DegenerateLineMatrix("m - m^-1 vanishes (identity input)")
    s = 1.0 / norm
    return LineMatrixRep(la * s, lb * s, lc * s, ld * s)


def axes_perpendicular(f: IsometryMatrix, g: IsometryMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff the axes of f and g are perpendicular (or improper-line
    incident): the trace of the product of their line matrices vanishes."""
    fa, fb, fc, fd = line_matrix_entries(f)
    ga, gb, gc, gd = line_matrix_entries(g)
    nf = _norm4(fa, fb, fc, fd)
    ng = _norm4(ga, gb, gc, gd)
    if nf < tol.alg or ng < tol.alg:
        raise DegenerateLineMatrix("line matrix of an identity input")
    # same axis is not perpendicular: compare normalized line matrices mod sign
    sf, sg = 1.0 / nf, 1.0 / ng
    same = min(
        _norm4(fa * sf - ga * sg, fb * sf - gb * sg, fc * sf - gc * sg, fd * sf - gd * sg),
        _norm4(fa * sf + ga * sg, fb * sf + gb * sg, fc * sf + gc * sg, fd * sf + gd * sg),
    )
    if same < tol.geo:
        return False
    trace = (ga * fa + gb * fc) + (gc * fb + gd * fd)
    return abs(trace) < tol.geo * nf * ng
