"""Tolerance configuration.

Every geometric predicate in the package branches on one of four epsilons:

* ``alg``    -- algebraic identities between matrices (reconstruction, roots),
* ``cls``    -- trace thresholds separating hyperbolic / parabolic / elliptic,
* ``geo``    -- incidence and perpendicularity of geodesics,
* ``vertex`` -- chordal snapping of near-coincident ideal points and vertex hits.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_SCALE = "ROOTADJ_TOLERANCE_SCALE"


@dataclass(frozen=True)
class Tolerances:
    alg: float = 1e-9
    cls: float = 1e-9
    geo: float = 1e-8
    vertex: float = 1e-7

    def scaled(self, factor: float) -> "Tolerances":
        if factor <= 0:
            raise ValueError("tolerance scale must be positive")
        return Tolerances(
            alg=self.alg * factor,
            cls=self.cls * factor,
            geo=self.geo * factor,
            vertex=self.vertex * factor,
        )

    def with_overrides(self, **kwargs: float) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOL = Tolerances()


def from_environment(base: Tolerances = DEFAULT_TOL) -> Tolerances:
    """Apply the ROOTADJ_TOLERANCE_SCALE multiplier if set."""
    raw = os.environ.get(ENV_SCALE)
    if raw is None:
        return base
    try:
        factor = float(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_SCALE} must be a number, got {raw!r}") from exc
    return base.scaled(factor)
