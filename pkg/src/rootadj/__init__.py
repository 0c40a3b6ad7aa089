"""Discreteness of two-generator Fuchsian groups under root adjunction.

Given a stopping configuration for a pair of isometries of the hyperbolic
plane, decide whether adjoining an n-th root or rational power of a generator
keeps the group discrete (and free), certify the verdicts with independent
oracles, and render the underlying hexagon geometry.
"""

__version__ = "0.1.0"

from .tolerances import DEFAULT_TOL, Tolerances, from_environment
from .matrices import (
    Elliptic,
    Hyperbolic,
    Identity,
    IsometryMatrix,
    LineMatrixRep,
    Parabolic,
    axes_perpendicular,
    classify,
    is_primitive,
    line_matrix,
    nth_root,
    rational_power,
    rotation_angle,
)
from .geodesics import (
    INF,
    BoundaryPoint,
    Disjoint,
    GeneralizedGeodesic,
    HalfTurn,
    InteriorPoint,
    PointHit,
    ProperGeodesic,
    SharedEnd,
    axis_of,
    bounds_region,
    common_perpendicular,
    compose_half_turns,
    half_turn_apply,
    intersect,
    involution_line,
    side_of,
)
from .hexagon import (
    HexagonConfig,
    NotStopping,
    StoppingClass,
    build_hexagon,
    classify_stopping,
    cyclic_rotate,
)
from .adjunction import (
    ExitKind,
    ExitSide,
    FanLine,
    RootLineFan,
    Verdict,
    decide_adjoin,
    decide_rational_adjunction,
    exit_side,
    reduce_rational_power,
    root_line_fan,
)
from .verify import (
    CrossCheckReport,
    FSequence,
    ReductionResult,
    WordWitness,
    certify_region_free,
    cross_check,
    infinite_order_elliptic_witness,
    near_identity_search,
    nielsen_trace_reduce,
)
from .render import render_svg

__all__ = [name for name in dir() if not name.startswith("_")]
