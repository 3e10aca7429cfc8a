"""Command-line driver: ``geocover cover | generate | report``.

Coordinates are read and written in the instance's own units; the solver
works on the polygon scaled by 1/radius so that disks have unit radius.

Exit codes: 0 success, 2 input error, 3 verification failure,
4 numerical certification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import GeoCoverError, InstanceError, InvalidPolygon, NumericalCertificationFailure, OracleTimeout

log = logging.getLogger("geocover")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_NUMERIC = 4


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="geocover",
        description="Cover a polygon boundary with geodesic disks of a given radius.",
        epilog="Internally all coordinates are divided by the instance radius so disks have unit radius; "
        "every reported coordinate is in the input units.",
    )
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cover", help="compute a cover for an instance file")
    c.add_argument("instance", type=Path)
    c.add_argument("--algorithm", choices=("greedy", "corridor"), default="greedy")
    c.add_argument("--start-vertex", type=int, default=0)
    c.add_argument("--corridor-threshold", type=float, default=2.5)
    c.add_argument("--tolerance", type=float, default=1e-7, help="coverage tolerance for --verify")
    c.add_argument("--verify", action="store_true", help="check coverage exactly; exit 3 on gaps")
    c.add_argument("--opt-brute", action="store_true", help="report the [packing bound, brute-force] OPT bracket")
    c.add_argument("--grid", type=float, default=0.05, help="candidate grid spacing for --opt-brute")
    c.add_argument("--svg", type=Path)
    c.add_argument("--out", type=Path, help="solution JSON (default: stdout)")
    c.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("generate", help="write a seeded random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--shape", choices=("star", "walk", "corridor"), default="star")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--out", type=Path)

    r = sub.add_parser("report", help="benchmark tables (CSV) and figures (PNG)")
    r.add_argument("--out-dir", type=Path, default=Path("report"))
    r.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128, 256])
    r.add_argument("--widths", type=int, nargs="*", default=[10, 100, 1000])
    r.add_argument("--seeds", type=int, nargs="+", default=[0])
    return ap


def _cover(args) -> int:
    from .corridor import large_perimeter_cover
    from .greedy import contiguous_greedy
    from .io import emit_solution, parse_instance
    from .oracle import brute_force_opt, packing_lower_bound, verify_coverage

    try:
        inst = parse_instance(args.instance.read_bytes())
    except OSError as exc:
        raise InstanceError(f"cannot read {args.instance}: {exc}") from exc
    P = inst.polygon_unit()
    if args.algorithm == "greedy":
        sol = contiguous_greedy(P, args.start_vertex % P.n)
    else:
        sol = large_perimeter_cover(P, args.corridor_threshold)
    report = verify_coverage(P, sol.centers, args.tolerance) if args.verify else None
    extra = {}
    if args.opt_brute:
        lb = packing_lower_bound(P)
        try:
            ub, _ = brute_force_opt(P, center_grid_res=args.grid)
        except OracleTimeout as exc:
            log.warning("brute-force optimum unavailable: %s", exc)
            ub = None
        extra["opt_bracket"] = [lb, ub]
    data = emit_solution(sol, "json", inst.radius, report, extra=extra)
    if args.out:
        args.out.write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    if args.svg:
        args.svg.write_bytes(emit_solution(sol, "svg", inst.radius, report, P=P))
    if report is not None:
        print(
            f"verify: {'ok' if report.valid else 'FAILED'}  k={sol.k}  gaps={len(report.gaps)}",
            file=sys.stderr,
        )
        if not report.valid:
            for gap in report.gaps:
                print(f"  gap {gap.start.xy} -> {gap.end.xy} length {gap.length * inst.radius:.3g}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def _generate(args) -> int:
    from .generators import generate_random_polygon
    from .geometry import validate_polygon

    pts = generate_random_polygon(args.n, args.seed, args.shape)
    validate_polygon(pts)
    doc = {"vertices": [[x * args.radius, y * args.radius] for x, y in pts], "radius": args.radius}
    data = json.dumps(doc, indent=2) + "\n"
    if args.out:
        args.out.write_text(data)
    else:
        sys.stdout.write(data)
    return EXIT_OK


def _report(args) -> int:
    from .report import write_report

    for p in write_report(args.out_dir, args.sizes, args.widths, tuple(args.seeds)):
        print(p)
    return EXIT_OK


def run(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "cover":
            return _cover(args)
        if args.command == "generate":
            return _generate(args)
        return _report(args)
    except (InstanceError, InvalidPolygon) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalCertificationFailure as exc:
        print(f"numerical certification failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GeoCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
