"""Command-line front end.

Subcommands: chambers, sample, polytope, stability, verify, trees.
Exit codes: 0 ok, 1 verification failure, 2 stability parameter on a wall,
3 usage/parse error.  All stochastic output is determined by --seed; report
paths render a matplotlib figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import chambers, holonomy, polygons, polytopes, verify
from .errors import NotSmallWeight, OnWall, PolygonModuliError
from .trees import caterpillar, enumerate_trees, parse_tree
from .weights import WeightVector, parse_rational_list

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_ON_WALL = 2
EXIT_USAGE = 3


class CliError(Exception):
    """Usage-level error; maps to exit code 3."""


def _parse_alpha(text: str) -> WeightVector:
    try:
        return WeightVector(parse_rational_list(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad --alpha: {exc}") from exc


def _parse_tree_arg(n: int, text):
    try:
        if text is None:
            return caterpillar(n)
        return parse_tree(n, text)
    except (ValueError, PolygonModuliError) as exc:
        raise CliError(f"bad --tree: {exc}") from exc


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _figure_path(out) -> Path:
    return Path(out).with_suffix(".png")


def cmd_trees(args) -> int:
    if args.n > 10:
        raise CliError("tree enumeration capped at n = 10")
    ts = enumerate_trees(args.n)
    if args.format == "json":
        _emit(json.dumps({"n": args.n, "trees": [str(t) for t in ts]}, indent=2), args.out)
    else:
        _emit("\n".join(str(t) for t in ts) + "\n", args.out)
    return EXIT_OK


def cmd_chambers(args) -> int:
    alpha = _parse_alpha(args.alpha)
    walls = chambers.walls_hit(alpha)
    report = {
        "alpha": [str(a) for a in alpha],
        "total": str(alpha.total()),
        "walls": [str(w) for w in walls],
    }
    try:
        signature = chambers.chamber_signature(alpha)
        report["signature"] = {
            "{" + ",".join(map(str, S)) + "}": sign for S, sign in sorted(signature.items())
        }
    except OnWall:
        signature = None
    try:
        description = chambers.wall_path(alpha)
        report["steps"] = [s.to_json() for s in description.steps]
        report["poincare"] = description.poincare
    except OnWall as exc:
        report["on_wall"] = [str(w) for w in exc.walls]
        _emit(json.dumps(report, indent=2), args.out)
        return EXIT_ON_WALL
    except NotSmallWeight as exc:
        report["wall_path"] = f"skipped: {exc}"
    _emit(json.dumps(report, indent=2), args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    alpha = _parse_alpha(args.alpha)
    tree = _parse_tree_arg(alpha.n, args.tree)
    rng = np.random.default_rng(args.seed)
    diag_names = [str(d) for d in tree.sorted_diagonals]

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [f"x{i}_{c}" for i in range(1, alpha.n + 1) for c in "xyz"]
    header += [f"phi_{name}" for name in diag_names]
    writer.writerow(header)
    actions = np.empty((args.count, tree.n - 3))
    for i in range(args.count):
        p = polygons.sample_polygon(alpha, tree, rng)
        row = polygons.polygon_csv_row(p, tree)
        actions[i] = [float(v) for v in row[3 * alpha.n :]]
        writer.writerow(row)
    _emit(buf.getvalue(), args.out)
    if args.out and tree.n > 3 and not args.no_figure:
        from .plotting import render_sample_figure

        render_sample_figure(actions, diag_names, _figure_path(args.out))
    return EXIT_OK


def cmd_polytope(args) -> int:
    alpha = _parse_alpha(args.alpha)
    tree = _parse_tree_arg(alpha.n, args.tree)
    build = polytopes.build_goldman if args.goldman else polytopes.build_delta
    poly = build(tree, alpha)
    include_vertices = args.vertices and poly.dim <= polytopes.MAX_VERTEX_DIM
    report = poly.to_json(include_vertices=include_vertices)
    report["alpha"] = [str(a) for a in alpha]
    report["kind"] = "goldman" if args.goldman else "delta"
    if args.volume:
        if args.volume == "exact":
            report["volume"] = str(polytopes.volume(poly, "exact"))
        else:
            rng = np.random.default_rng(args.seed)
            est, se = polytopes.volume(poly, "mc", args.mc_samples, rng)
            report["volume"] = est
            report["volume_stderr"] = se
    if args.count_level:
        labels = (
            tuple(int(v) for v in args.labels.split(","))
            if args.labels
            else tuple([1] * alpha.n)
        )
        inst = polytopes.FusionInstance(tree, labels, args.count_level)
        report["fusion_count"] = polytopes.fusion_count(inst)
        report["level"] = args.count_level
        report["labels"] = list(labels)
    _emit(json.dumps(report, indent=2), args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    try:
        w = parse_rational_list(args.w)
        points = [
            p.strip() if p.strip() == chambers.INFINITY else p.strip()
            for p in args.points.split(",")
        ]
        verdict = chambers.is_semistable(points, w)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc
    if args.format == "json":
        _emit(json.dumps({"points": points, "w": [str(v) for v in w], "verdict": verdict}), args.out)
    else:
        _emit(verdict + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    alpha = _parse_alpha(args.alpha)
    tree = _parse_tree_arg(alpha.n, args.tree)
    results, sweep_rows, commutation_rows = verify.run_verification(
        alpha,
        tree,
        seed=args.seed,
        samples=args.count,
        commutation_tol=args.tol_commutation,
        identification_tol=args.tol_identification,
    )
    lines = [r.line() for r in results]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.out:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "defect"])
        for t, d in sweep_rows:
            writer.writerow([f"{t:.17g}", f"{d:.17g}"])
        Path(args.out).write_text(buf.getvalue())
        if not args.no_figure:
            from .plotting import render_verify_figure

            render_verify_figure(sweep_rows, commutation_rows, _figure_path(args.out))
    failed = [r for r in results if not r.skipped and not r.passed]
    if failed:
        sys.stdout.write(f"verification failed: {', '.join(r.name for r in failed)}\n")
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polygonmoduli",
        description="Wall-crossing, moment polytopes and integrable systems "
        "for weighted polygon and holonomy spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tree_flag=True):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (determinism)")
        p.add_argument("--format", choices=["json", "csv", "text"], default="json")
        p.add_argument("--out", help="write output to this file")
        if tree_flag:
            p.add_argument("--tree", help='diagonals, e.g. "1-2,1-3" (default: caterpillar)')

    p = sub.add_parser("trees", help="enumerate triangulations")
    p.add_argument("--n", type=int, required=True)
    common(p, tree_flag=False)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("chambers", help="walls, chamber signature, wall-crossing path")
    p.add_argument("--alpha", required=True, help='rationals, e.g. "1/5,1/5,1/5,1/5,1/5" or "1/5x5"')
    common(p, tree_flag=False)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("sample", help="sample polygons, emit CSV + figure")
    p.add_argument("--alpha", required=True)
    p.add_argument("--count", "--n", type=int, default=100, dest="count")
    p.add_argument("--no-figure", action="store_true")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("polytope", help="moment polytope report, volumes, fusion counts")
    p.add_argument("--alpha", required=True)
    p.add_argument("--goldman", action="store_true", help="quantum inequalities included")
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--volume", choices=["mc", "exact"])
    p.add_argument("--mc-samples", type=int, default=100_000)
    p.add_argument("--count-level", type=int, help="fusion lattice count at this level")
    p.add_argument("--labels", help="integer leaf labels, comma-separated")
    common(p)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("stability", help="GIT (semi)stability of a point configuration")
    p.add_argument("--w", required=True, help="weights with |w| = 2")
    p.add_argument("--points", required=True, help='points on the line, "inf" allowed')
    common(p, tree_flag=False)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("verify", help="run the numerical verification suites")
    p.add_argument("--alpha", required=True)
    p.add_argument("--count", "--samples", type=int, default=100, dest="count")
    p.add_argument("--tol-commutation", type=float, default=1e-5)
    p.add_argument("--tol-identification", type=float, default=0.02)
    p.add_argument("--no-figure", action="store_true")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OnWall as exc:
        sys.stderr.write(f"on wall: {exc}\n")
        return EXIT_ON_WALL
    except PolygonModuliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
