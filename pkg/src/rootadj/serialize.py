"""JSON wire formats: group specifications, geodesics, hexagons, classes."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .geodesics import INF, BoundaryPoint, InteriorPoint, ProperGeodesic
from .hexagon import SIDE_NAMES, HexagonConfig, NotStopping, StoppingClass
from .matrices import Elliptic, Hyperbolic, Identity, IsometryMatrix, Parabolic
from .tolerances import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class GroupSpec:
    gen_a: IsometryMatrix
    gen_b: IsometryMatrix
    root: dict | None = None  # {"role": "A"|"B", "num": int, "den": int}
    tolerances: dict | None = None

    def to_json_dict(self) -> dict:
        out = {"generators": {"A": self.gen_a.to_list(), "B": self.gen_b.to_list()}}
        if self.root is not None:
            out["root"] = dict(self.root)
        if self.tolerances is not None:
            out["tolerances"] = dict(self.tolerances)
        return out

    def make_tolerances(self, base: Tolerances = DEFAULT_TOL) -> Tolerances:
        if not self.tolerances:
            return base
        return base.with_overrides(**self.tolerances)


_TOLERANCE_KEYS = ("alg", "cls", "geo", "vertex")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse and validate a group-specification document; unknown fields are
    rejected, matrices are normalized, orientation-reversing input refused."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object")
    unknown = set(doc) - {"generators", "root", "tolerances"}
    if unknown:
        raise ValidationError(f"unknown fields: {sorted(unknown)}", field=sorted(unknown)[0])
    gens = doc.get("generators")
    if not isinstance(gens, dict):
        raise ValidationError("missing generators", field="generators")
    extra = set(gens) - {"A", "B"}
    if extra:
        raise ValidationError(f"unknown generators: {sorted(extra)}", field="generators")
    matrices = {}
    for name in ("A", "B"):
        if name not in gens:
            raise ValidationError(f"missing generator {name}", field=f"generators.{name}")
        matrices[name] = _parse_matrix(gens[name], f"generators.{name}")
    root = doc.get("root")
    if root is not None:
        root = _parse_root(root)
    tolerances = doc.get("tolerances")
    if tolerances is not None:
        tolerances = _parse_tolerances(tolerances)
    return GroupSpec(gen_a=matrices["A"], gen_b=matrices["B"], root=root, tolerances=tolerances)


def _parse_matrix(raw, field: str) -> IsometryMatrix:
    if not isinstance(raw, list) or len(raw) != 4:
        raise ValidationError(f"{field} must be a list [a, b, c, d]", field=field)
    try:
        values = [float(x) for x in raw]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{field} entries must be numbers", field=field) from exc
    det = values[0] * values[3] - values[1] * values[2]
    if det <= 0:
        raise ValidationError(
            f"{field} must have positive determinant (orientation-preserving)", field=field
        )
    m = IsometryMatrix.from_list(values)
    if m.is_identity():
        raise ValidationError(f"{field} is the identity", field=field)
    return m


def _parse_root(raw) -> dict:
    if not isinstance(raw, dict):
        raise ValidationError("root must be an object", field="root")
    unknown = set(raw) - {"role", "num", "den"}
    if unknown:
        raise ValidationError(f"unknown root fields: {sorted(unknown)}", field="root")
    role = raw.get("role")
    if role not in ("A", "B"):
        raise ValidationError("root.role must be 'A' or 'B'", field="root.role")
    num, den = raw.get("num"), raw.get("den")
    for key, val in (("num", num), ("den", den)):
        if not isinstance(val, int) or val < 1:
            raise ValidationError(f"root.{key} must be a positive integer", field=f"root.{key}")
    return {"role": role, "num": num, "den": den}


def _parse_tolerances(raw) -> dict:
    if not isinstance(raw, dict):
        raise ValidationError("tolerances must be an object", field="tolerances")
    unknown = set(raw) - set(_TOLERANCE_KEYS)
    if unknown:
        raise ValidationError(f"unknown tolerance fields: {sorted(unknown)}", field="tolerances")
    out = {}
    for key, val in raw.items():
        if not isinstance(val, (int, float)) or val <= 0:
            raise ValidationError(f"tolerances.{key} must be positive", field=f"tolerances.{key}")
        out[key] = float(val)
    return out


# -- geodesics and hexagons ------------------------------------------------------


def _num(x: float):
    if math.isinf(x):
        return "inf"
    return x


def _unnum(x) -> float:
    if x == "inf":
        return INF
    return float(x)


def geodesic_to_json(g) -> dict:
    if isinstance(g, ProperGeodesic):
        return {"type": "proper", "p": _num(g.p), "q": _num(g.q)}
    if isinstance(g, BoundaryPoint):
        return {"type": "boundary", "p": _num(g.p)}
    if isinstance(g, InteriorPoint):
        return {"type": "interior", "re": g.z.real, "im": g.z.imag}
    raise TypeError(f"not a geodesic: {g!r}")


def geodesic_from_json(doc: dict):
    kind = doc.get("type")
    if kind == "proper":
        return ProperGeodesic(_unnum(doc["p"]), _unnum(doc["q"]))
    if kind == "boundary":
        return BoundaryPoint(_unnum(doc["p"]))
    if kind == "interior":
        return InteriorPoint(complex(doc["re"], doc["im"]))
    raise ValidationError(f"unknown geodesic type {kind!r}")


def _vertex_to_json(v) -> dict:
    if isinstance(v, complex):
        return {"kind": "interior", "re": v.real, "im": v.imag}
    return {"kind": "boundary", "p": _num(v)}


def element_class_to_json(cls) -> dict:
    if isinstance(cls, Hyperbolic):
        return {"kind": "hyperbolic", "translation_length": cls.translation_length}
    if isinstance(cls, Parabolic):
        return {"kind": "parabolic"}
    if isinstance(cls, Elliptic):
        return {
            "kind": "elliptic",
            "rotation_angle": cls.rotation_angle,
            "finite_order": cls.finite_order,
        }
    if isinstance(cls, Identity):
        return {"kind": "identity"}
    raise TypeError(f"not an element class: {cls!r}")


def hexagon_to_json(h: HexagonConfig, stopping=None) -> dict:
    out = {
        "generators": {"A": h.gen_a.to_list(), "B": h.gen_b.to_list()},
        "sides": {name: geodesic_to_json(s) for name, s in zip(SIDE_NAMES, h.sides)},
        "vertices": [_vertex_to_json(v) for v in h.vertices],
        "orientation": {"right_of_core": h.right_of_core},
    }
    if isinstance(stopping, StoppingClass):
        out["stopping"] = {"tag": stopping.tag, "shape": stopping.shape}
    elif isinstance(stopping, NotStopping):
        out["stopping"] = None
        out["not_stopping_reason"] = stopping.reason
    return out
