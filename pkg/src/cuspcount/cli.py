"""Command-line interface.

Subcommands: ``count`` (the enumeration itself), ``factors`` (weight-table and
factor calculators), ``decompose`` (per-family totals on triangle:d), and a
hidden ``oracle`` for the independent rational-curve recursion.

Exit codes: 0 success, 2 validation/usage error, 3 resource budget exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import factors
from .engine import (
    InvariantViolationError,
    ResourceLimitError,
    count,
    decompose_families,
)
from .kontsevich import kontsevich_oracle
from .multiplicity import MultiplicityError
from .problem import Mode, ValidationError, parse_polygon_spec, validate_instance
from .report import emit_csv, emit_json, emit_table, write_svg_files

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RESOURCE = 3
EXIT_INVARIANT = 4

_MODES = {"cuspidal": Mode.CUSPIDAL, "severi": Mode.SEVERI}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspcount",
        description=(
            "Exact counts of unicuspidal (and, as a cross-check, nodal) curves "
            "of given degree and genus on toric surfaces, via lattice path "
            "enumeration over the Newton polygon."
        ),
    )
    sub = parser.add_subparsers(dest="command", metavar="{count,factors,decompose}")
    sub.required = True

    p_count = sub.add_parser("count", help="count curves for a polygon, genus and mode")
    p_count.add_argument("--polygon", required=True, help="triangle:<d> | rect:<a>,<b> | poly:(x,y),...")
    p_count.add_argument("--genus", required=True, type=int)
    p_count.add_argument("--mode", required=True, choices=sorted(_MODES))
    p_count.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    p_count.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p_count.add_argument("--total-only", action="store_true", help="omit the per-contribution breakdown")
    p_count.add_argument("--emit-svg", metavar="DIR", help="write one SVG figure per contribution")
    p_count.add_argument("--max-paths", type=int, default=None, help="abort if more lambda-paths than this")
    p_count.add_argument("--max-subdivisions", type=int, default=None, help="abort if more subdivisions than this")

    p_factors = sub.add_parser("factors", help="print weight tables and fragment factors")
    fsub = p_factors.add_subparsers(dest="factor", metavar="{theta,quad,flat-vertex,elliptic-edge,flat-cycle}")
    fsub.required = True
    p_theta = fsub.add_parser("theta", help="table of genus-1 edge weights")
    p_theta.add_argument("--max", required=True, type=int)
    p_quad = fsub.add_parser("quad", help="four-valent vertex factor |det(a, b)|")
    p_quad.add_argument("--a", required=True, help="vector as x,y")
    p_quad.add_argument("--b", required=True, help="vector as x,y")
    p_flat = fsub.add_parser("flat-vertex", help="flat trivalent vertex factor")
    p_flat.add_argument("--m1", required=True, type=int)
    p_flat.add_argument("--m2", required=True, type=int)
    p_flat.add_argument("--case", required=True, choices=("upper", "middle", "lower"))
    p_ell = fsub.add_parser("elliptic-edge", help="genus-1 edge factor theta(m)/m")
    p_ell.add_argument("--m", required=True, type=int)
    p_cycle = fsub.add_parser("flat-cycle", help="flat cycle factor (standalone calculator)")
    p_cycle.add_argument("--mu", required=True, type=int, help="reduced vertex multiplicity")
    p_cycle.add_argument("--m", required=True, type=int)
    p_cycle.add_argument("--m1", required=True, type=int)
    p_cycle.add_argument("--m2", required=True, type=int)
    p_cycle.add_argument("--special-even", action="store_true")

    p_dec = sub.add_parser("decompose", help="per-family totals for triangle:d at maximal cuspidal genus")
    p_dec.add_argument("--d", required=True, type=int)
    p_dec.add_argument("--format", choices=("json", "table"), default="table")
    p_dec.add_argument("--threads", type=int, default=1)

    # deliberately undocumented: independent test oracle
    p_oracle = sub.add_parser("oracle")
    p_oracle.add_argument("--d", required=True, type=int)
    return parser


def _cmd_count(args) -> int:
    poly = parse_polygon_spec(args.polygon)
    instance = validate_instance(poly, args.genus, _MODES[args.mode])
    result = count(
        instance,
        threads=args.threads,
        collect=not args.total_only,
        max_paths=args.max_paths,
        max_subdivisions=args.max_subdivisions,
    )
    if args.emit_svg:
        write_svg_files(result, args.emit_svg)
    if args.format == "json":
        sys.stdout.write(emit_json(result))
    elif args.format == "csv":
        sys.stdout.write(emit_csv(result))
    else:
        sys.stdout.write(emit_table(result))
    return EXIT_OK


def _cmd_factors(args) -> int:
    if args.factor == "theta":
        for m, value in factors.theta_table(args.max).items():
            print(f"theta({m}) = {value}")
        return EXIT_OK
    if args.factor == "quad":
        a = tuple(int(v) for v in args.a.split(","))
        b = tuple(int(v) for v in args.b.split(","))
        print(factors.quad_factor(a, b))
        return EXIT_OK
    if args.factor == "flat-vertex":
        print(factors.flat_vertex_factor(args.m1, args.m2, args.case))
        return EXIT_OK
    if args.factor == "elliptic-edge":
        print(factors.elliptic_edge_factor(args.m))
        return EXIT_OK
    print(
        factors.flat_cycle_factor(
            args.mu, args.m, args.m1, args.m2, special_even_case=args.special_even
        )
    )
    return EXIT_OK


def _cmd_decompose(args) -> int:
    d = args.d
    poly = parse_polygon_spec(f"triangle:{d}")
    p_a = (d - 1) * (d - 2) // 2
    instance = validate_instance(poly, p_a - 1, Mode.CUSPIDAL)
    result = count(instance, threads=args.threads)
    table = decompose_families(result, d)
    if args.format == "json":
        print(json.dumps({k: str(v) for k, v in table.items()}, indent=2))
    else:
        for key, value in table.items():
            print(f"{key:>6}  {value}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "factors":
            return _cmd_factors(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "oracle":
            print(kontsevich_oracle(args.d))
            return EXIT_OK
        parser.error(f"unknown command {args.command!r}")
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvariantViolationError, MultiplicityError, ArithmeticError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
