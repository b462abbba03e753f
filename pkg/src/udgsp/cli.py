"""Command-line interface: ``udgsp gen|solve|verify|bench|plot``.

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .delaunay import build_delaunay
from .files import InputError, format_points, format_tree, parse_tree, read_points, write_text
from .geom import PointSet
from .oracle import (GenerationError, GenSpec, Shape, bfs_oracle, build_explicit,
                     connected_from, dijkstra_oracle, generate, side_for_degree)
from .tree import ShortestPathTree, check_tree
from .unweighted import unweighted_sssp
from .wbcp import WbcpIndex, WeightedBlue
from .weighted import weighted_sssp

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2
WEIGHTED_RTOL = 1e-9


def solve(ps: PointSet, source: int, mode: str, radius: float, *, trace: bool = False) -> ShortestPathTree:
    if mode == "unweighted":
        return unweighted_sssp(ps, source, radius, trace=trace)
    if mode == "weighted":
        return weighted_sssp(ps, source, radius, trace=trace)
    raise ValueError(f"unknown mode {mode!r}")


def verify(ps: PointSet, source: int, mode: str, radius: float = 1.0) -> list[str]:
    """Compare a solver run with the explicit-graph oracle; return the problems."""
    tree = solve(ps, source, mode, radius)
    g = build_explicit(ps, radius)
    problems = []
    if mode == "unweighted":
        ref = bfs_oracle(g, source)
        bad = np.flatnonzero(tree.dist != ref.dist)
    else:
        ref = dijkstra_oracle(g, source)
        both = np.isfinite(ref.dist) & np.isfinite(tree.dist)
        err = np.zeros(len(ps))
        err[both] = np.abs(tree.dist[both] - ref.dist[both]) - WEIGHTED_RTOL * np.maximum(1.0, ref.dist[both])
        bad = np.flatnonzero((err > 0) | (np.isfinite(ref.dist) != np.isfinite(tree.dist)))
    for i in bad[:10].tolist():
        problems.append(f"point {i}: solver {tree.dist[i]!r}, oracle {ref.dist[i]!r}")
    if len(bad) > 10:
        problems.append(f"... {len(bad) - 10} more distance mismatches")
    try:
        check_tree(tree, ps.coords, weighted=mode == "weighted")
    except AssertionError as exc:
        problems.append(f"invalid tree: {exc}")
    reach = set(tree.reachable().tolist())
    if reach != connected_from(g, source):
        problems.append("reachable set differs from the connected component of the source")
    return problems


def _seed(args_seed: int) -> int:
    env = os.environ.get("UDG_SEED")
    return int(env) if env not in (None, "") else args_seed


def cmd_gen(args, out) -> int:
    side = args.side
    if args.degree is not None:
        side = side_for_degree(args.n, args.degree, args.radius)
    spec = GenSpec(args.n, Shape(args.shape), side, _seed(args.seed), args.margin,
                   args.radius, args.duplicates)
    ps = generate(spec)
    write_text(args.output, format_points(ps), out)
    return EXIT_OK


def cmd_solve(args, out) -> int:
    ps = read_points(args.input)
    ps.check_index(args.source)
    tree = solve(ps, args.source, args.mode, args.radius, trace=args.trace)
    write_text(args.output, format_tree(tree), out)
    if args.trace:
        for event in tree.trace:
            print(" ".join(str(x) if not isinstance(x, tuple) else ",".join(map(str, x))
                           for x in event), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    ps = read_points(args.input)
    ps.check_index(args.source)
    modes = ["unweighted", "weighted"] if args.mode == "both" else [args.mode]
    status = EXIT_OK
    for mode in modes:
        problems = verify(ps, args.source, mode, args.radius)
        print(f"{mode}: {'ok' if not problems else 'MISMATCH'} (n={len(ps)}, source={args.source})", file=out)
        for p in problems:
            print(f"  {p}", file=out)
        if problems:
            status = EXIT_MISMATCH
    return status


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def bench_cell(n: int, mode: str, degree: float, seed: int, radius: float = 1.0,
               oracle: bool = True) -> dict:
    ps = generate(GenSpec(n, Shape.UNIFORM_SQUARE, side_for_degree(n, degree, radius), seed,
                          radius=radius))
    row = {"n": n, "mode": mode, "dt_edges": "", "bcp_ops": "", "explicit_oracle_ms": ""}
    if mode == "unweighted":
        t0 = time.perf_counter()
        dt = build_delaunay(ps)
        row["build_ms"] = _ms(t0)
        t0 = time.perf_counter()
        unweighted_sssp(ps, 0, radius, dt=dt)
        row["solve_ms"] = _ms(t0)
        row["dt_edges"] = dt.edge_count
    else:
        t0 = time.perf_counter()
        WbcpIndex(ps, [WeightedBlue(0, 0.0)], range(1, n))
        row["build_ms"] = _ms(t0)
        t0 = time.perf_counter()
        tree = weighted_sssp(ps, 0, radius)
        row["solve_ms"] = _ms(t0)
        row["bcp_ops"] = tree.stats["bcp_ops"]
    if oracle:
        t0 = time.perf_counter()
        g = build_explicit(ps, radius)
        (bfs_oracle if mode == "unweighted" else dijkstra_oracle)(g, 0)
        row["explicit_oracle_ms"] = _ms(t0)
    return row


BENCH_COLUMNS = ["n", "mode", "build_ms", "solve_ms", "explicit_oracle_ms", "dt_edges", "bcp_ops"]


def cmd_bench(args, out) -> int:
    modes = ["unweighted", "weighted"] if args.mode == "both" else [args.mode]
    base = _seed(args.seed)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, BENCH_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    for n in args.sizes:
        for mode in modes:
            cells = [bench_cell(n, mode, args.degree, base + k, args.radius, not args.no_oracle)
                     for k in range(args.seeds)]
            row = dict(cells[0])
            for col in ("build_ms", "solve_ms", "explicit_oracle_ms"):
                vals = [c[col] for c in cells if c[col] != ""]
                row[col] = f"{statistics.median(vals):.3f}" if vals else ""
            writer.writerow(row)
    write_text(args.output, buf.getvalue(), out)
    return EXIT_OK


_PALETTE = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"]


def _hops(tree: ShortestPathTree) -> np.ndarray:
    hops = np.full(len(tree.dist), -1, dtype=np.int64)
    hops[tree.source] = 0
    for p in tree.reachable().tolist():
        chain = []
        q = p
        while hops[q] < 0:
            chain.append(q)
            q = int(tree.parent[q])
        h = hops[q]
        for c in reversed(chain):
            h += 1
            hops[c] = h
    return hops


def render_svg(ps: PointSet, tree: ShortestPathTree, size: float = 800.0) -> str:
    """Static figure: per-level union of radius disks, tree edges, points."""
    xy = ps.coords
    r = tree.radius
    lo = xy.min(axis=0) - r
    hi = xy.max(axis=0) + r
    scale = size / max(float((hi - lo).max()), 1e-12)
    width, height = (hi - lo) * scale

    def tx(p):
        return (p[0] - lo[0]) * scale, (hi[1] - p[1]) * scale

    hops = _hops(tree)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
           f'viewBox="0 0 {width:.1f} {height:.1f}">',
           '<rect width="100%" height="100%" fill="white"/>']
    # group opacity makes overlapping disks of one level read as their union
    for level in range(int(hops.max()) + 1):
        members = np.flatnonzero(hops == level)
        color = _PALETTE[level % len(_PALETTE)]
        out.append(f'<g id="level-{level}" fill="{color}" opacity="0.18">')
        for p in members.tolist():
            cx, cy = tx(xy[p])
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r * scale:.2f}"/>')
        out.append("</g>")
    out.append('<g stroke="black" stroke-width="1">')
    for p in tree.reachable().tolist():
        q = int(tree.parent[p])
        if q < 0:
            continue
        (x1, y1), (x2, y2) = tx(xy[q]), tx(xy[p])
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    out.append("</g>")
    for p in range(len(xy)):
        cx, cy = tx(xy[p])
        fill = "red" if p == tree.source else ("black" if hops[p] >= 0 else "#999999")
        rad = 4 if p == tree.source else 2
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{rad}" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_plot(args, out) -> int:
    ps = read_points(args.input)
    tree = parse_tree(Path(args.tree).read_text(encoding="utf-8"))
    if len(tree.dist) != len(ps):
        raise InputError(f"tree has {len(tree.dist)} points but the input has {len(ps)}")
    write_text(args.output, render_svg(ps, tree), out)
    return EXIT_OK


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udgsp", description="Shortest path trees in unit disk graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a point set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shape", choices=[s.value for s in Shape], default="uniform_square")
    p.add_argument("--side", type=_positive, default=10.0)
    p.add_argument("--degree", type=_positive, help="pick the side for this average degree")
    p.add_argument("--seed", type=int, default=0, help="overridden by $UDG_SEED")
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--margin", type=float, default=1e-9)
    p.add_argument("--duplicates", type=float, default=0.0, help="fraction of repeated points")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="compute a shortest path tree")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--source", "-s", type=int, default=0)
    p.add_argument("--mode", choices=["unweighted", "weighted"], default="unweighted")
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--output", "-o")
    p.add_argument("--trace", action="store_true", help="print loop events to stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check the solver against the explicit graph")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--source", "-s", type=int, default=0)
    p.add_argument("--mode", choices=["unweighted", "weighted", "both"], default="both")
    p.add_argument("--radius", type=_positive, default=1.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time solvers on uniform instances (CSV)")
    p.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096])
    p.add_argument("--degree", type=_positive, default=10.0)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--seed", type=int, default=0, help="first seed; overridden by $UDG_SEED")
    p.add_argument("--mode", choices=["unweighted", "weighted", "both"], default="unweighted")
    p.add_argument("--radius", type=_positive, default=1.0)
    p.add_argument("--no-oracle", action="store_true", help="skip the explicit-graph timing")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="draw a tree and its levels as SVG")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--tree", "-t", required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, GenerationError, IndexError, ValueError, OSError) as exc:
        print(f"udgsp {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
