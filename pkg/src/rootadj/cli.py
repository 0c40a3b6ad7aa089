"""Command-line front end: JSON in on stdin or a file, JSON out on stdout.

Subcommands: classify | hexagon | adjoin | verify | render.  Exit codes:
0 definite verdict, 1 input error, 2 referral or inconclusive result,
3 tolerance-sensitive verdict (borderline incidence flags present).
"""

from __future__ import annotations

import argparse
import json
import sys

from .adjunction import OUTCOME_NEEDS_ELLIPTIC, decide_rational_adjunction, root_line_fan
from .errors import NotStoppingInput, ParseError, RootAdjError, ValidationError
from .hexagon import NotStopping, build_hexagon, classify_stopping
from .matrices import classify
from .render import render_svg
from .serialize import element_class_to_json, hexagon_to_json, parse_group_spec
from .tolerances import DEFAULT_TOL, from_environment
from .verify import cross_check

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_BORDERLINE = 3


def _read_spec(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _error_payload(exc: Exception) -> dict:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if isinstance(exc, ParseError):
        payload["error"]["line"] = exc.line
        payload["error"]["column"] = exc.column
    if isinstance(exc, ValidationError) and exc.field:
        payload["error"]["field"] = exc.field
    return payload


def _root_params(spec, args) -> tuple[str, int, int]:
    role = getattr(args, "role", None) or (spec.root or {}).get("role")
    num = getattr(args, "num", None) or (spec.root or {}).get("num")
    den = getattr(args, "den", None) or (spec.root or {}).get("den")
    if role is None or num is None or den is None:
        raise ValidationError(
            "root parameters required: give --role/--num/--den or a root block in the spec",
            field="root",
        )
    return role, int(num), int(den)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootadj",
        description=(
            "Decide discreteness of two-generator hyperbolic-plane groups when a "
            "root or rational power of a generator is adjoined."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("spec", nargs="?", default="-", help="JSON spec file ('-' for stdin)")

    add_common(sub.add_parser("classify", help="print element classes of A, B, A^-1B"))
    add_common(sub.add_parser("hexagon", help="build the hexagon and recognize stopping"))

    p_adj = sub.add_parser("adjoin", help="decide discreteness for an adjoined root")
    p_adj.add_argument("--role", choices=("A", "B"))
    p_adj.add_argument("--num", type=int)
    p_adj.add_argument("--den", type=int)
    p_adj.add_argument(
        "--ie-mode",
        choices=("general", "section7"),
        default="general",
        help="which reading of the elliptic-product clause to apply",
    )
    add_common(p_adj)

    p_ver = sub.add_parser("verify", help="decide, then cross-check with independent oracles")
    p_ver.add_argument("--role", choices=("A", "B"))
    p_ver.add_argument("--num", type=int)
    p_ver.add_argument("--den", type=int)
    add_common(p_ver)

    p_ren = sub.add_parser("render", help="render the hexagon (and fan) as SVG")
    p_ren.add_argument("--out", required=True, help="output SVG path")
    p_ren.add_argument("--role", choices=("A", "B"))
    p_ren.add_argument("--num", type=int)
    p_ren.add_argument("--den", type=int)
    add_common(p_ren)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = parse_group_spec(_read_spec(args.spec))
    except (OSError, RootAdjError) as exc:
        _emit(_error_payload(exc))
        return EXIT_INPUT_ERROR
    tol = from_environment(spec.make_tolerances(DEFAULT_TOL))

    try:
        if args.command == "classify":
            _emit(
                {
                    "A": element_class_to_json(classify(spec.gen_a, tol)),
                    "B": element_class_to_json(classify(spec.gen_b, tol)),
                    "AinvB": element_class_to_json(classify(spec.gen_a.inverse() * spec.gen_b, tol)),
                }
            )
            return EXIT_OK

        if args.command == "hexagon":
            h = build_hexagon(spec.gen_a, spec.gen_b, tol)
            stopping = classify_stopping(h, tol)
            _emit(hexagon_to_json(h, stopping))
            return EXIT_OK if not isinstance(stopping, NotStopping) else EXIT_INCONCLUSIVE

        if args.command == "adjoin":
            role, num, den = _root_params(spec, args)
            verdict = decide_rational_adjunction(
                spec.gen_a, spec.gen_b, role, num, den, tol, args.ie_mode
            )
            _emit(verdict.to_json_dict())
            if any(f.startswith("borderline") for f in verdict.flags):
                return EXIT_BORDERLINE
            if verdict.outcome == OUTCOME_NEEDS_ELLIPTIC:
                return EXIT_INCONCLUSIVE
            return EXIT_OK

        if args.command == "verify":
            role, num, den = _root_params(spec, args)
            verdict = decide_rational_adjunction(spec.gen_a, spec.gen_b, role, num, den, tol)
            report = cross_check(verdict, tol=tol)
            _emit({"verdict": verdict.to_json_dict(), "report": report.to_json_dict()})
            if any(f.startswith("borderline") for f in verdict.flags):
                return EXIT_BORDERLINE
            if report.status == "inconclusive" or verdict.outcome == OUTCOME_NEEDS_ELLIPTIC:
                return EXIT_INCONCLUSIVE
            return EXIT_OK

        if args.command == "render":
            h = build_hexagon(spec.gen_a, spec.gen_b, tol)
            fan = None
            try:
                role, num, den = _root_params(spec, args)
            except ValidationError:
                role = None
            if role is not None:
                fan = root_line_fan(h, role, den, den, tol)
            svg = render_svg(h, fan)
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(svg)
            _emit({"written": args.out, "fan_lines": 0 if fan is None else len(fan.lines)})
            return EXIT_OK
    except NotStoppingInput as exc:
        _emit(_error_payload(exc))
        return EXIT_INCONCLUSIVE
    except RootAdjError as exc:
        _emit(_error_payload(exc))
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        _emit(_error_payload(exc))
        return EXIT_INPUT_ERROR
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
