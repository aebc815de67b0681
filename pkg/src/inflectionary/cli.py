"""Command-line front end.

Subcommands cover construction (compute), the verification checks
(verify), exact real-root censuses (roots, scan), rendering (plot) and the
closed-form invariant predictions (genus).  Exit codes are part of the
contract: 0 success/all-pass, 1 a check failed, 2 usage error, 3 violated
precondition, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .conjectures import (
    DEFAULT_LAMBDA_GRID,
    check_coeff_symmetry,
    check_determinant_identity,
    check_face_structure,
    check_homogenization_symmetry,
    check_shift_symmetry,
    check_support,
    conjecture4_scan,
    real_root_census,
    singular_probe,
)
from .inflection import (
    calibrate_recurrence_coefficient,
    general_inflection,
    predicted_delta,
    predicted_genus,
    torsion_check,
)
from .poly import parse_rational, poly_to_json
from .render import DEFAULT_WINDOW, Window, render_curve
from .reports import FAIL, PASS, jsonable

# Sweep defaults for `verify`, chosen to stay comfortably inside desk scale.
SYMMETRY_K_MAX = 8
SUPPORT_K_MAX = 8
FACES_K_MAX = 6
LEMMA1_PAIRS = ((2, 3), (2, 4), (3, 4), (2, 5))

OUTDIR_ENV = "INFLECTIONARY_OUTDIR"


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational_list(text: str):
    parts = [piece.strip() for piece in text.split(",") if piece.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty rational list")
    return tuple(_rational(piece) for piece in parts)


def _window_corners(text: str):
    values = _rational_list(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError(
            "window needs exactly x_min,x_max,lambda_min,lambda_max")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inflectionary",
        description="Exact inflection polynomials of Legendre curves: "
                    "construction, verification, root censuses and plots.",
    )
    parser.add_argument("--coefficient-check", action="store_true",
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")

    compute = sub.add_parser("compute", help="construct one inflection polynomial")
    compute.add_argument("--mu", type=int, required=True)
    compute.add_argument("--k", type=int, required=True)
    compute.add_argument("--format", choices=("json", "text"), default="json")

    verify = sub.add_parser("verify", help="run one verification check family")
    verify.add_argument("check", choices=(
        "symmetry", "support", "faces", "lemma1", "torsion", "singular"))
    verify.add_argument("--k", type=int)
    verify.add_argument("--k-max", type=int, dest="k_max")
    verify.add_argument("--mu", type=int)
    verify.add_argument("--lambda", type=_rational, dest="lambda0")

    roots = sub.add_parser("roots", help="census the real roots at one lambda")
    roots.add_argument("--mu", type=int, required=True)
    roots.add_argument("--k", type=int, required=True)
    roots.add_argument("--lambda", type=_rational, dest="lambda0", required=True)

    scan = sub.add_parser("scan", help="sweep a lambda grid and check the root-count law")
    scan.add_argument("--mu", type=int, required=True)
    scan.add_argument("--k", type=int, required=True)
    scan.add_argument("--lambda-grid", type=_rational_list, dest="grid",
                      default=DEFAULT_LAMBDA_GRID)

    plot = sub.add_parser("plot", help="render the real locus to an SVG file")
    plot.add_argument("--mu", type=int, required=True)
    plot.add_argument("--k", type=int, required=True)
    plot.add_argument("--out", required=True)
    plot.add_argument("--window", type=_window_corners, default=None,
                      help="x_min,x_max,lambda_min,lambda_max (rationals)")
    plot.add_argument("--nx", type=int, default=DEFAULT_WINDOW.nx)
    plot.add_argument("--nlambda", type=int, default=DEFAULT_WINDOW.nlambda)

    genus = sub.add_parser("genus", help="print the predicted plane-model invariants")
    genus.add_argument("--k", type=int, required=True)

    return parser


def cmd_compute(args) -> int:
    poly = general_inflection(args.mu, args.k).poly
    if args.format == "json":
        print(poly_to_json(poly))
    else:
        print(poly.to_text())
    return 0


def _verify_reports(args):
    check = args.check
    if check == "symmetry":
        ks = [args.k] if args.k is not None else \
            list(range(1, (args.k_max or SYMMETRY_K_MAX) + 1))
        out = []
        for k in ks:
            out.append(check_homogenization_symmetry(k))
            out.append(check_shift_symmetry(k))
        return out
    if check == "support":
        ks = [args.k] if args.k is not None else \
            list(range(1, (args.k_max or SUPPORT_K_MAX) + 1))
        out = []
        for k in ks:
            out.append(check_support(k))
            out.append(check_coeff_symmetry(k))
        return out
    if check == "faces":
        ks = [args.k] if args.k is not None else \
            list(range(2, (args.k_max or FACES_K_MAX) + 1))
        return [check_face_structure(k) for k in ks]
    if check == "lemma1":
        if (args.mu is None) != (args.k is None):
            raise _UsageError("lemma1 needs both --mu and --k, or neither")
        pairs = [(args.mu, args.k)] if args.mu is not None else list(LEMMA1_PAIRS)
        return [check_determinant_identity(mu, k) for mu, k in pairs]
    if check == "torsion":
        k = 2 if args.k is None else args.k
        lambda0 = Fraction(-1) if args.lambda0 is None else args.lambda0
        return [torsion_check(k, lambda0)]
    k = 2 if args.k is None else args.k
    return [singular_probe(k)]


class _UsageError(Exception):
    pass


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    for report in reports:
        print(report.to_json())
    failures = sum(1 for r in reports if r.verdict == FAIL)
    warnings = sum(1 for r in reports if r.verdict not in (PASS, FAIL))
    if failures:
        return 1
    if warnings:
        print(f"warning: {warnings} check(s) did not fully resolve", file=sys.stderr)
    return 0


def cmd_roots(args) -> int:
    census = real_root_census(args.mu, args.k, args.lambda0)
    print(json.dumps(jsonable(census.to_json_dict()), separators=(",", ":")))
    return 0


def cmd_scan(args) -> int:
    report = conjecture4_scan(args.mu, args.k, args.grid)
    print(report.to_json())
    return 0 if report.passed else 1


def cmd_plot(args) -> int:
    corners = args.window if args.window is not None else (
        DEFAULT_WINDOW.x_min, DEFAULT_WINDOW.x_max,
        DEFAULT_WINDOW.lambda_min, DEFAULT_WINDOW.lambda_max)
    try:
        window = Window(*corners, nx=args.nx, nlambda=args.nlambda)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    poly = general_inflection(args.mu, args.k).poly
    out = args.out
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(out):
        os.makedirs(outdir, exist_ok=True)
        out = os.path.join(outdir, out)
    render_curve(poly, window, out)
    return 0


def cmd_genus(args) -> int:
    delta = predicted_delta(args.k)
    genus = predicted_genus(args.k)
    print(f"delta={delta} genus={genus}")
    if genus < 0:
        print(f"note: predicted genus is negative at k={args.k}", file=sys.stderr)
    return 0


_DISPATCH = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "roots": cmd_roots,
    "scan": cmd_scan,
    "plot": cmd_plot,
    "genus": cmd_genus,
}


# Flags whose values may start with "-" (negative rationals, grids,
# windows); merged into --flag=value form so argparse never mistakes the
# value for an option.
_VALUE_FLAGS = ("--lambda", "--lambda-grid", "--window")


def _merge_value_flags(argv):
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_value_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.coefficient_check:
            calibration = calibrate_recurrence_coefficient()
            print(json.dumps(calibration, separators=(",", ":")))
            return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
