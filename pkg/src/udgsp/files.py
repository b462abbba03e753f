"""Plain-text point and tree files."""
from __future__ import annotations

import math
from pathlib import Path
from typing import TextIO

import numpy as np

from .geom import PointSet
from .tree import NIL, ShortestPathTree


class InputError(ValueError):
    """Malformed input file; the message carries the offending line number."""


def _data_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _finite(tok: str, lineno: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise InputError(f"line {lineno}: {tok!r} is not a number") from None
    if not math.isfinite(v):
        raise InputError(f"line {lineno}: coordinate {tok!r} is not finite")
    return v


def parse_points(text: str) -> PointSet:
    lines = _data_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise InputError("line 1: missing point count") from None
    try:
        n = int(head)
    except ValueError:
        raise InputError(f"line {lineno}: expected the point count, got {head!r}") from None
    if n < 1:
        raise InputError(f"line {lineno}: point count must be at least 1")
    coords = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'x y', got {line!r}")
        if len(coords) == n:
            raise InputError(f"line {lineno}: more than {n} coordinate lines")
        coords.append((_finite(parts[0], lineno), _finite(parts[1], lineno)))
    if len(coords) != n:
        raise InputError(f"expected {n} coordinate lines, found {len(coords)}")
    return PointSet(np.array(coords, dtype=np.float64))


def format_points(ps: PointSet) -> str:
    out = [str(len(ps))]
    out.extend(f"{x!r} {y!r}" for x, y in ps.coords.tolist())
    return "\n".join(out) + "\n"


def read_points(path: str | Path) -> PointSet:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_text(path: str | Path | None, text: str, stdout: TextIO) -> None:
    if path is None or str(path) == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _fmt_dist(d: float, weighted: bool) -> str:
    if math.isinf(d):
        return "inf"
    return format(d, ".17g") if weighted else str(int(d))


def format_tree(tree: ShortestPathTree) -> str:
    weighted = tree.mode == "weighted"
    out = [f"source {tree.source} radius {tree.radius!r} mode {tree.mode}"]
    for i, (d, p) in enumerate(zip(tree.dist.tolist(), tree.parent.tolist())):
        out.append(f"{i} {_fmt_dist(d, weighted)} {p}")
    return "\n".join(out) + "\n"


def parse_tree(text: str) -> ShortestPathTree:
    lines = _data_lines(text)
    try:
        lineno, head = next(lines)
    except StopIteration:
        raise InputError("line 1: missing tree header") from None
    parts = head.split()
    if len(parts) != 6 or parts[0::2] != ["source", "radius", "mode"]:
        raise InputError(f"line {lineno}: expected 'source <s> radius <r> mode <m>'")
    try:
        source, radius = int(parts[1]), float(parts[3])
    except ValueError:
        raise InputError(f"line {lineno}: bad source or radius") from None
    mode = parts[5]
    if mode not in ("unweighted", "weighted"):
        raise InputError(f"line {lineno}: unknown mode {mode!r}")
    dist, parent = [], []
    for lineno, line in lines:
        f = line.split()
        if len(f) != 3:
            raise InputError(f"line {lineno}: expected '<index> <dist> <parent>'")
        try:
            idx, d, p = int(f[0]), float(f[1]), int(f[2])
        except ValueError:
            raise InputError(f"line {lineno}: malformed tree line {line!r}") from None
        if idx != len(dist):
            raise InputError(f"line {lineno}: expected index {len(dist)}, got {idx}")
        dist.append(d)
        parent.append(p if p >= 0 else NIL)
    if not 0 <= source < len(dist):
        raise InputError(f"source {source} out of range for {len(dist)} points")
    return ShortestPathTree(source, np.array(dist), np.array(parent, dtype=np.int64), radius, mode)
