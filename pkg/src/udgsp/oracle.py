"""Brute-force references and seeded instance generators.

Everything here builds or walks the explicit graph, so it is quadratic in the
worst case.  These functions only exist to check the implicit solvers.
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np
from scipy.spatial import cKDTree

from .geom import PointSet
from .tree import NIL, ShortestPathTree


class GenerationError(RuntimeError):
    """The requested instance could not be produced within the resampling budget."""


@dataclass(frozen=True, eq=False)
class ExplicitGraph:
    """CSR adjacency of G_{<=r}(P) with Euclidean edge lengths."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    radius: float = 1.0

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, i: int) -> list[tuple[int, float]]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return list(zip(self.indices[lo:hi].tolist(), self.weights[lo:hi].tolist()))


def close_pairs(xy: np.ndarray, r: float) -> np.ndarray:
    """All index pairs ``(i, j)``, ``i < j``, with squared distance <= r*r.

    The tree query uses a slightly enlarged radius; the final filter is the
    same double-precision squared distance the solvers use.
    """
    if len(xy) < 2:
        return np.empty((0, 2), dtype=np.int64)
    tree = cKDTree(xy)
    pairs = tree.query_pairs(r * (1.0 + 1e-9) + 1e-300, output_type="ndarray").astype(np.int64)
    d = xy[pairs[:, 0]] - xy[pairs[:, 1]]
    sq = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    pairs = pairs[sq <= r * r]
    pairs.sort(axis=1)
    return pairs


def brute_force_pairs(xy: np.ndarray, r: float) -> list[tuple[int, int]]:
    """Plain double loop; only for small inputs."""
    pts = xy.tolist()
    r2 = r * r
    out = []
    for i in range(len(pts)):
        xi, yi = pts[i]
        for j in range(i + 1, len(pts)):
            dx = xi - pts[j][0]
            dy = yi - pts[j][1]
            if dx * dx + dy * dy <= r2:
                out.append((i, j))
    return out


def build_explicit(ps: PointSet, r: float = 1.0) -> ExplicitGraph:
    xy = ps.coords
    n = len(xy)
    pairs = close_pairs(xy, r)
    src = np.concatenate([pairs[:, 0], pairs[:, 1]])
    dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    d = xy[src] - xy[dst]
    w = np.sqrt(d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1])
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return ExplicitGraph(n, indptr, dst, w, r)


def _check_source(g: ExplicitGraph, s: int) -> int:
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} out of range for {g.n} vertices")
    return int(s)


def bfs_oracle(g: ExplicitGraph, s: int) -> ShortestPathTree:
    s = _check_source(g, s)
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    dist = [math.inf] * g.n
    parent = [NIL] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in indices[indptr[u]:indptr[u + 1]]:
            if dist[v] == math.inf:
                dist[v] = du
                parent[v] = u
                queue.append(v)
    return ShortestPathTree(s, np.array(dist, dtype=np.float64), np.array(parent, dtype=np.int64),
                            g.radius, "unweighted")


def dijkstra_oracle(g: ExplicitGraph, s: int) -> ShortestPathTree:
    s = _check_source(g, s)
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    weights = g.weights.tolist()
    dist = [math.inf] * g.n
    parent = [NIL] * g.n
    done = [False] * g.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            nd = d + weights[k]
            if nd < dist[v] or (nd == dist[v] and not done[v] and u < parent[v]):
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    return ShortestPathTree(s, np.array(dist, dtype=np.float64), np.array(parent, dtype=np.int64),
                            g.radius, "weighted")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]


def connected_from(g: ExplicitGraph, s: int) -> set[int]:
    s = _check_source(g, s)
    uf = _UnionFind(g.n)
    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    for u, v in zip(rows.tolist(), g.indices.tolist()):
        if u < v:
            uf.union(u, v)
    root = uf.find(s)
    return {i for i in range(g.n) if uf.find(i) == root}


def naive_bcp(coords: np.ndarray, blues: Mapping[int, float], reds: Iterable[int]):
    """Minimum of ``weight(b) + |r - b|`` over all blue/red pairs.

    Returns ``(b, r, delta)`` with ties going to the smaller blue index, then
    the smaller red index, or ``None`` when either side is empty.
    """
    reds = sorted(reds)
    best = None
    for b in sorted(blues):
        wb = blues[b]
        bx, by = float(coords[b, 0]), float(coords[b, 1])
        for r in reds:
            dx = float(coords[r, 0]) - bx
            dy = float(coords[r, 1]) - by
            delta = wb + math.sqrt(dx * dx + dy * dy)
            if best is None or delta < best[2]:
                best = (b, r, delta)
    return best


# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------

class Shape(str, Enum):
    UNIFORM_SQUARE = "uniform_square"
    GRID = "grid"
    CLUSTERS = "clusters"
    COLLINEAR = "collinear"


@dataclass(frozen=True)
class GenSpec:
    n: int
    shape: Shape = Shape.UNIFORM_SQUARE
    side: float = 10.0
    seed: int = 0
    min_threshold_margin: float = 1e-9
    radius: float = 1.0
    duplicate_fraction: float = 0.0
    max_resample_rounds: int = 200


def side_for_degree(n: int, degree: float, r: float = 1.0) -> float:
    """Square side giving roughly ``degree`` expected neighbours per point."""
    return r * math.sqrt(math.pi * max(n - 1, 1) / degree)


def _sample(spec: GenSpec, rng: np.random.Generator, k: int, centers: np.ndarray | None) -> np.ndarray:
    side = spec.side
    if spec.shape is Shape.UNIFORM_SQUARE:
        return rng.uniform(0.0, side, size=(k, 2))
    if spec.shape is Shape.CLUSTERS:
        sigma = side / (4.0 * math.sqrt(len(centers)))
        which = rng.integers(0, len(centers), size=k)
        pts = centers[which] + rng.normal(0.0, sigma, size=(k, 2))
        return np.clip(pts, 0.0, side)
    if spec.shape is Shape.COLLINEAR:
        # y = x/2 is exact in binary floating point, so the points are exactly collinear
        t = rng.uniform(0.0, side, size=k)
        return np.column_stack([t, t * 0.5])
    raise AssertionError(spec.shape)


def _grid(spec: GenSpec) -> np.ndarray:
    k = math.isqrt(spec.n - 1) + 1
    step = spec.side / k
    j = np.arange(spec.n)
    return np.column_stack([(j % k + 0.5) * step, (j // k + 0.5) * step])


def _margin_violations(xy: np.ndarray, r: float, margin: float) -> np.ndarray:
    if len(xy) < 2 or margin <= 0:
        return np.empty(0, dtype=np.int64)
    reach = math.sqrt(r * r + margin) * (1.0 + 1e-9)
    pairs = cKDTree(xy).query_pairs(reach, output_type="ndarray")
    if not len(pairs):
        return np.empty(0, dtype=np.int64)
    d = xy[pairs[:, 0]] - xy[pairs[:, 1]]
    sq = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    bad = pairs[np.abs(sq - r * r) < margin]
    return np.unique(bad.max(axis=1))


def generate(spec: GenSpec) -> PointSet:
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    if not spec.side > 0:
        raise ValueError("side must be positive")
    shape = Shape(spec.shape)
    spec = GenSpec(**{**spec.__dict__, "shape": shape})
    rng = np.random.default_rng(spec.seed)
    if shape is Shape.GRID:
        xy = _grid(spec)
        if len(_margin_violations(xy, spec.radius, spec.min_threshold_margin)):
            raise GenerationError("grid spacing puts point pairs at the radius threshold")
        return PointSet(xy)

    centers = None
    if shape is Shape.CLUSTERS:
        centers = rng.uniform(0.0, spec.side, size=(max(1, spec.n // 50), 2))
    n_dup = int(round(spec.n * spec.duplicate_fraction)) if spec.n > 1 else 0
    base = spec.n - n_dup
    xy = _sample(spec, rng, base, centers)
    for _ in range(spec.max_resample_rounds):
        bad = _margin_violations(xy, spec.radius, spec.min_threshold_margin)
        if not len(bad):
            break
        xy[bad] = _sample(spec, rng, len(bad), centers)
    else:
        raise GenerationError(
            f"could not keep pairs {spec.min_threshold_margin} away from the threshold "
            f"after {spec.max_resample_rounds} resampling rounds")
    if n_dup:
        xy = np.concatenate([xy, xy[rng.integers(0, base, size=n_dup)]])
        xy = xy[rng.permutation(len(xy))]
    return PointSet(xy)
