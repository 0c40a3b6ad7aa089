"""Independent verification oracles.

Nothing here reuses the hexagon decision path: region certificates come from
the bounded-region criterion for half-turn triples, non-discreteness evidence
from breadth-first word enumeration, and the trace-reduction driver gives a
best-effort route from non-stopping pairs to stopping ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, GeometryViolation, IntersectingAxes, UnresolvedOrder
from .geodesics import (
    Disjoint,
    HalfTurn,
    PointHit,
    ProperGeodesic,
    SharedEnd,
    bounds_region,
    compose_half_turns,
    crossing_angle,
    intersect,
)
from .hexagon import NotStopping, build_hexagon, classify_stopping
from .matrices import (
    Elliptic,
    Identity,
    IsometryMatrix,
    classify,
    is_primitive,
    recognize_rational,
)
from .adjunction import (
    OUTCOME_FREE,
    OUTCOME_NEEDS_ELLIPTIC,
    OUTCOME_NOT_DISCRETE,
    OUTCOME_NOT_FREE,
    Verdict,
    make_view,
)
from .tolerances import DEFAULT_TOL, Tolerances

WORD_BUDGET = 10**7


@dataclass(frozen=True)
class WordWitness:
    """A freely reduced word with numerically suspicious value."""

    word: tuple  # signed generator indices: +k / -k is generator k-1 / its inverse
    matrix: IsometryMatrix
    defect: float

    def word_str(self) -> str:
        names = "abcdefgh"
        return "".join(
            names[abs(k) - 1] + ("'" if k < 0 else "") for k in self.word
        )


@dataclass(frozen=True)
class RegionCertificate:
    free: bool
    detail: str


@dataclass(frozen=True)
class FSequence:
    """Record of trace-reduction moves; replaying them on the input pair
    reproduces the output pair exactly."""

    moves: tuple = ()
    primitive_replacements: tuple = ()  # unused by this driver; kept for schema


@dataclass(frozen=True)
class ReductionResult:
    pair: tuple
    fsequence: FSequence
    status: str  # stopped | needs-elliptic | not-free-evidence | inconclusive
    witness: IsometryMatrix | None = None


# -- region certificates ---------------------------------------------------------


def certify_region_free(
    g1: ProperGeodesic,
    g2: ProperGeodesic,
    g3: ProperGeodesic,
    tol: Tolerances = DEFAULT_TOL,
) -> RegionCertificate | None:
    """Certificate for the group generated by the three half-turns.

    Disjoint, mutually non-separating lines bound a region, which makes the
    reflection group (and its orientation-preserving index-2 subgroup)
    discrete and free; ideal contacts keep freeness.  A pair crossing at half
    a primitive angle yields a discrete-but-not-free certificate provided the
    remaining line stays clear.  Anything else gets no certificate.
    """
    lines = (g1, g2, g3)
    crossings = []
    for i in range(3):
        for j in range(i + 1, 3):
            if isinstance(intersect(lines[i], lines[j], tol), PointHit):
                crossings.append((i, j))
    if not crossings:
        if bounds_region(g1, g2, g3, tol):
            return RegionCertificate(free=True, detail="half-turn lines bound a region")
        return None
    if len(crossings) > 1:
        return None
    i, j = crossings[0]
    angle = crossing_angle(lines[i], lines[j], tol)
    rotation = compose_half_turns(HalfTurn(lines[i]), HalfTurn(lines[j]), tol)
    cls = classify(rotation, tol)
    if not isinstance(cls, Elliptic):
        return None
    try:
        primitive = is_primitive(cls)
    except UnresolvedOrder:
        return None
    if not primitive:
        return None
    k = lines[3 - i - j]
    for m in (i, j):
        if isinstance(intersect(lines[m], k, tol), PointHit):
            return None
    order = cls.finite_order
    return RegionCertificate(
        free=False,
        detail=f"one crossing at half a primitive angle (rotation order {order}, angle {angle:.6f})",
    )


# -- word enumeration -------------------------------------------------------------


def _word_count(k: int, max_len: int) -> int:
    if k == 0:
        return 0
    total = 0
    layer = 2 * k
    for _ in range(max_len):
        total += layer
        layer *= 2 * k - 1
    return total


def _enumerate_words(generators, max_len: int):
    """Breadth-first, freely reduced words as (word, matrix) pairs."""
    gens = []
    for idx, g in enumerate(generators, start=1):
        gens.append((idx, g))
        gens.append((-idx, g.inverse()))
    frontier = [((sym,), mat) for sym, mat in gens]
    for _ in range(max_len):
        next_frontier = []
        for word, mat in frontier:
            yield word, mat
            for sym, g in gens:
                if word[-1] == -sym:
                    continue
                next_frontier.append((word + (sym,), mat * g))
        frontier = next_frontier


def near_identity_search(
    generators,
    max_len: int = 8,
    delta: float = 1e-3,
    tol: Tolerances = DEFAULT_TOL,
) -> WordWitness | None:
    """First nontrivial freely reduced word within delta of plus-or-minus the
    identity.  A witness is strong evidence against discreteness with the
    given generators as a free basis; absence proves nothing.
    """
    if max_len > 12:
        raise ValueError("max_len capped at 12")
    if _word_count(len(generators), max_len) > WORD_BUDGET:
        raise BudgetExceeded("word enumeration would exceed the budget")
    identity = IsometryMatrix(1.0, 0.0, 0.0, 1.0)
    for word, mat in _enumerate_words(generators, max_len):
        defect = mat.dist_mod_sign(identity)
        if defect < delta:
            return WordWitness(word=word, matrix=mat, defect=defect)
    return None


def infinite_order_elliptic_witness(
    generators,
    max_len: int = 6,
    tol: Tolerances = DEFAULT_TOL,
) -> WordWitness | None:
    """Search for an elliptic word whose rotation number defeats rational
    recognition; such an element has infinite order, which is incompatible
    with discreteness."""
    if max_len > 10:
        raise ValueError("max_len capped at 10")
    if _word_count(len(generators), max_len) > WORD_BUDGET:
        raise BudgetExceeded("word enumeration would exceed the budget")
    for word, mat in _enumerate_words(generators, max_len):
        cls = classify(mat, tol)
        if not isinstance(cls, Elliptic):
            continue
        x = cls.rotation_angle / (2.0 * math.pi)
        frac = recognize_rational(x)
        if frac is None:
            best = abs(x - _best_rational(x))
            return WordWitness(word=word, matrix=mat, defect=best)
    return None


def _best_rational(x: float) -> float:
    from fractions import Fraction

    return float(Fraction(x).limit_denominator(10**6))


# -- trace reduction ---------------------------------------------------------------


_MOVES = (
    lambda a, b: (b, a * b),
    lambda a, b: (b, b.inverse() * a),
    lambda a, b: (a * b, b),
    lambda a, b: (b.inverse() * a, b),
)


def _ordered(pair, tol: Tolerances):
    a, b = pair
    if abs(b.trace) > abs(a.trace) + tol.alg:
        return (b, a), True
    return (a, b), False


def apply_moves(pair, moves, tol: Tolerances = DEFAULT_TOL):
    """Replay a recorded move sequence (deterministic)."""
    for idx in moves:
        pair, _ = _ordered(pair, tol)
        pair = _MOVES[idx - 1](*pair)
    return pair


def nielsen_trace_reduce(
    a: IsometryMatrix,
    b: IsometryMatrix,
    max_iter: int = 64,
    tol: Tolerances = DEFAULT_TOL,
) -> ReductionResult:
    """Trace-minimizing reduction toward a stopping pair.

    Each step reorders the pair by descending absolute trace, then replaces it
    with the candidate pair among (B, AB), (B, B^-1 A), (AB, B), (B^-1 A, B)
    that has the strictly smallest maximum absolute trace; ties break in the
    listed order.  Stops when the pair is stopping, when an elliptic or
    identity word appears, when no candidate decreases the measure, or at
    max_iter.
    """
    from .geodesics import axis_of

    hit = intersect(axis_of(a, tol), axis_of(b, tol), tol)
    if isinstance(hit, PointHit):
        raise IntersectingAxes("input axes cross in the interior")
    pair = (a, b)
    moves: list[int] = []
    for _ in range(max_iter):
        status = _terminal_status(pair, tol)
        if status is not None:
            return ReductionResult(
                pair=pair, fsequence=FSequence(moves=tuple(moves)), status=status[0],
                witness=status[1],
            )
        ordered, _ = _ordered(pair, tol)
        current = max(abs(ordered[0].trace), abs(ordered[1].trace))
        best_idx, best_pair, best_measure = None, None, current
        for idx, move in enumerate(_MOVES, start=1):
            cand = move(*ordered)
            for m in cand:
                cls = classify(m, tol)
                if isinstance(cls, Elliptic):
                    return ReductionResult(
                        pair=pair,
                        fsequence=FSequence(moves=tuple(moves)),
                        status="needs-elliptic",
                        witness=m,
                    )
                if isinstance(cls, Identity):
                    return ReductionResult(
                        pair=pair,
                        fsequence=FSequence(moves=tuple(moves)),
                        status="not-free-evidence",
                        witness=m,
                    )
            measure = max(abs(cand[0].trace), abs(cand[1].trace))
            if measure < best_measure - tol.alg:
                best_idx, best_pair, best_measure = idx, cand, measure
        if best_idx is None:
            return ReductionResult(
                pair=pair, fsequence=FSequence(moves=tuple(moves)), status="inconclusive"
            )
        pair = best_pair
        moves.append(best_idx)
    return ReductionResult(
        pair=pair, fsequence=FSequence(moves=tuple(moves)), status="inconclusive"
    )


def _terminal_status(pair, tol: Tolerances):
    try:
        h = build_hexagon(pair[0], pair[1], tol)
    except Exception:
        return None
    result = classify_stopping(h, tol)
    if isinstance(result, NotStopping):
        return None
    return ("stopped", None)


# -- verdict cross-checking -----------------------------------------------------------


@dataclass(frozen=True)
class CrossCheckReport:
    status: str  # agreement | disagreement | inconclusive
    detail: str
    witness: WordWitness | None = None
    certificate: RegionCertificate | None = None

    def to_json_dict(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        out["witness"] = (
            {"word": list(self.witness.word), "defect": self.witness.defect}
            if self.witness
            else None
        )
        out["certificate"] = (
            {"free": self.certificate.free, "detail": self.certificate.detail}
            if self.certificate
            else None
        )
        return out


def _adjoined_generators(v: Verdict, tol: Tolerances):
    from .matrices import rational_power

    view = make_view(v.hexagon, v.role)
    return (rational_power(view.x, 1, v.den, tol), view.y)


def cross_check(v: Verdict, generators=None, tol: Tolerances = DEFAULT_TOL) -> CrossCheckReport:
    """Independent check of a verdict; disagreements are report content.

    discrete-free: a carried half-turn triple must certify a bounded region
    and a short near-identity search must come up empty.  discrete-not-free:
    the carried torsion element must be a recognized finite-order elliptic.
    needs-elliptic-algorithm: an infinite-order hunt on the reduced pair;
    evidence found downgrades to inconclusive.  not-discrete: the hunt must
    find the witness.  Borderline verdicts are allowed to be inconclusive.
    """
    borderline = any(f.startswith("borderline") for f in v.flags)
    if generators is None and v.hexagon is not None and v.den:
        generators = _adjoined_generators(v, tol)

    if v.outcome == OUTCOME_FREE:
        if not v.certificate_triples:
            return _miss(borderline, "no certificate triple carried by the verdict")
        cert = certify_region_free(*v.certificate_triples[0], tol=tol)
        if cert is None or not cert.free:
            return _miss(borderline, "certificate triple does not bound a region")
        witness = near_identity_search(generators, 8, 1e-3, tol) if generators else None
        if witness is not None:
            return CrossCheckReport(
                status="disagreement",
                detail="near-identity word found in a certified free group",
                witness=witness,
                certificate=cert,
            )
        return CrossCheckReport(status="agreement", detail="region certificate + empty word search", certificate=cert)

    if v.outcome == OUTCOME_NOT_FREE:
        t = v.torsion_element
        if t is None:
            return _miss(borderline, "no torsion element carried by the verdict")
        cls = classify(t, tol)
        if not isinstance(cls, Elliptic) or cls.finite_order is None:
            return _miss(borderline, "carried torsion element is not a finite-order elliptic")
        return CrossCheckReport(
            status="agreement", detail=f"torsion element of order {cls.finite_order} verified"
        )

    if v.outcome == OUTCOME_NEEDS_ELLIPTIC:
        pair = v.reduced_pair or generators
        if pair is None:
            return CrossCheckReport(status="inconclusive", detail="no reduced pair to examine")
        witness = infinite_order_elliptic_witness(pair, 5, tol)
        if witness is not None:
            return CrossCheckReport(
                status="inconclusive",
                detail="infinite-order elliptic evidence in the reduced pair",
                witness=witness,
            )
        return CrossCheckReport(status="agreement", detail="referral consistent; no contrary evidence")

    if v.outcome == OUTCOME_NOT_DISCRETE:
        pool = []
        if v.torsion_element is not None:
            pool.append((v.torsion_element,))
        if generators is not None:
            pool.append(generators)
        for gens in pool:
            witness = infinite_order_elliptic_witness(gens, 5, tol)
            if witness is not None:
                return CrossCheckReport(
                    status="agreement", detail="infinite-order elliptic witness found", witness=witness
                )
        return CrossCheckReport(status="inconclusive", detail="no witness found within budget")

    return CrossCheckReport(status="inconclusive", detail=f"unknown outcome {v.outcome!r}")


def _miss(borderline: bool, detail: str) -> CrossCheckReport:
    if borderline:
        return CrossCheckReport(status="inconclusive", detail=detail + " (borderline verdict)")
    return CrossCheckReport(status="disagreement", detail=detail)
