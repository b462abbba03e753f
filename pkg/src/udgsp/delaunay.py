"""Delaunay triangulation as a vertex-adjacency graph.

Qhull (through :mod:`scipy.spatial`) produces the initial triangulation.  The
result is then certified with exact predicates and repaired with Lawson edge
flips, so the final triangulation is Delaunay under exact arithmetic.  If
Qhull fails or drops input points (near-degenerate inputs), a sweep
triangulation built with exact orientation tests is legalized instead.

Duplicate points are not vertices of the triangulation.  Every copy of a
location is attached to the smallest index at that location (its
representative) by a zero-length edge.  All-collinear inputs, and inputs with
fewer than three distinct locations, become the path through the distinct
locations in sorted order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .geom import PointSet, incircle_many, incircle_sign, orient_many, orient_sign


@dataclass(frozen=True, eq=False)
class DelaunayTriangulation:
    """Immutable adjacency view of DT(P).

    ``indptr``/``indices`` hold the adjacency in CSR form with every row sorted
    ascending.  ``triangles`` lists the counter-clockwise triangles over point
    indices (empty for degenerate inputs).
    """

    vertex_count: int
    indptr: np.ndarray
    indices: np.ndarray
    triangles: np.ndarray
    used_fallback: bool = False
    flips: int = 0
    _lists: list[list[int]] | None = field(default=None, repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i: int) -> list[int]:
        if not 0 <= i < self.vertex_count:
            raise IndexError(f"vertex {i} out of range for {self.vertex_count} vertices")
        return self.indices[self.indptr[i]:self.indptr[i + 1]].tolist()

    @property
    def adjacency(self) -> list[list[int]]:
        if self._lists is None:
            lists = [self.indices[self.indptr[i]:self.indptr[i + 1]].tolist()
                     for i in range(self.vertex_count)]
            object.__setattr__(self, "_lists", lists)
        return self._lists

    def edges(self) -> np.ndarray:
        """Undirected edges as an ``(m, 2)`` array with ``u < v``, sorted."""
        rows = np.repeat(np.arange(self.vertex_count), np.diff(self.indptr))
        mask = rows < self.indices
        return np.column_stack([rows[mask], self.indices[mask]])


def neighbors(dt: DelaunayTriangulation, i: int) -> list[int]:
    return dt.neighbors(i)


def build_delaunay(ps: PointSet, *, method: str = "auto") -> DelaunayTriangulation:
    """Build DT(ps).

    ``method="sweep"`` skips Qhull and always legalizes the sweep
    triangulation; it exists so the fallback path can be tested directly.
    """
    if method not in ("auto", "sweep"):
        raise ValueError(f"unknown method {method!r}")
    xy = ps.coords
    n = len(xy)
    rep_of = representatives(xy)
    reps = np.flatnonzero(rep_of == np.arange(n))
    m = len(reps)

    edge_parts = []
    dup = np.flatnonzero(rep_of != np.arange(n))
    if len(dup):
        edge_parts.append(np.column_stack([rep_of[dup], dup]))

    triangles = np.empty((0, 3), dtype=np.int64)
    fallback = False
    flips = 0
    rxy = xy[reps]
    if m >= 3 and not _all_collinear(rxy):
        local, fallback, flips = _triangulate(rxy, use_qhull=method == "auto")
        triangles = reps[local]
        tri_edges = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
        edge_parts.append(tri_edges)
    elif m >= 2:
        order = np.lexsort((rxy[:, 1], rxy[:, 0]))
        path = reps[order]
        edge_parts.append(np.column_stack([path[:-1], path[1:]]))

    indptr, indices = _csr(n, edge_parts)
    return DelaunayTriangulation(n, indptr, indices, triangles, fallback, flips)


def representatives(xy: np.ndarray) -> np.ndarray:
    """For each point, the smallest index sharing its exact location."""
    n = len(xy)
    order = np.lexsort((np.arange(n), xy[:, 1], xy[:, 0]))
    sx, sy = xy[order, 0], xy[order, 1]
    new_group = np.ones(n, dtype=bool)
    new_group[1:] = (sx[1:] != sx[:-1]) | (sy[1:] != sy[:-1])
    group_head = order[np.flatnonzero(new_group)]
    rep_of = np.empty(n, dtype=np.int64)
    rep_of[order] = group_head[np.cumsum(new_group) - 1]
    return rep_of


def _csr(n: int, parts: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    if parts:
        e = np.concatenate(parts).astype(np.int64)
        lo, hi = e.min(axis=1), e.max(axis=1)
        keys = np.unique(np.concatenate([lo * n + hi, hi * n + lo]))
        src, dst = keys // n, keys % n
    else:
        src = dst = np.empty(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    indptr.setflags(write=False)
    dst.setflags(write=False)
    return indptr, dst


def _all_collinear(xy: np.ndarray) -> bool:
    # xy holds distinct points, so rows 0 and 1 define a line.
    k = len(xy)
    ia = np.zeros(k - 2, dtype=np.int64)
    ib = np.ones(k - 2, dtype=np.int64)
    ic = np.arange(2, k)
    return not np.any(orient_many(xy, ia, ib, ic))


def _triangulate(xy: np.ndarray, use_qhull: bool = True) -> tuple[np.ndarray, bool, int]:
    """CCW Delaunay triangles over distinct, not-all-collinear points."""
    qh = _qhull(xy) if use_qhull else None
    if qh is not None:
        tris, suspects = qh
        if not len(suspects):
            return tris, False, 0
        tris, flips = _lawson(xy, tris, suspects)
        return tris, False, flips
    tris, flips = _lawson(xy, _sweep(xy), None)
    return tris, True, flips


def _qhull(xy: np.ndarray):
    """Qhull triangles (reoriented CCW) plus the edges failing the exact
    incircle test, or ``None`` when the output cannot be certified."""
    try:
        dt = Delaunay(xy)
    except (QhullError, ValueError):
        return None
    if len(dt.coplanar):
        return None
    simp = dt.simplices.astype(np.int64)
    if len(np.unique(simp)) != len(xy):
        return None
    o = orient_many(xy, simp[:, 0], simp[:, 1], simp[:, 2])
    if np.any(o == 0):
        return None

    # Opposite vertex across each interior edge: the neighbour's vertex sum
    # minus the two shared vertices.
    nb = dt.neighbors.astype(np.int64)
    t_idx, k_idx = np.nonzero(nb >= 0)
    other = nb[t_idx, k_idx]
    keep = t_idx < other
    t_idx, k_idx, other = t_idx[keep], k_idx[keep], other[keep]
    shared_sum = simp[t_idx].sum(axis=1) - simp[t_idx, k_idx]
    opp = simp[other].sum(axis=1) - shared_sum
    s = incircle_many(xy, simp[t_idx, 0], simp[t_idx, 1], simp[t_idx, 2], opp) * o[t_idx]

    tris = simp.copy()
    cw = o < 0
    tris[cw, 1], tris[cw, 2] = simp[cw, 2], simp[cw, 1]
    if not _is_triangulation(tris, len(xy)):
        return None
    bad = np.flatnonzero(s > 0)
    k = k_idx[bad]
    a = simp[t_idx[bad], (k + 1) % 3]
    b = simp[t_idx[bad], (k + 2) % 3]
    return tris, np.column_stack([a, b])


def _is_triangulation(tris: np.ndarray, m: int) -> bool:
    directed = np.concatenate([tris[:, [0, 1]], tris[:, [1, 2]], tris[:, [2, 0]]])
    keys = directed[:, 0] * m + directed[:, 1]
    if len(np.unique(keys)) != len(keys):
        return False
    rev = directed[:, 1] * m + directed[:, 0]
    hull_edges = int(np.count_nonzero(~np.isin(rev, keys)))
    return len(tris) == 2 * m - 2 - hull_edges


def _sweep(xy: np.ndarray) -> np.ndarray:
    """Triangulate by inserting points in lexicographic order against the
    lower and upper hull chains.  Exact orientation tests only."""
    order = np.lexsort((xy[:, 1], xy[:, 0])).tolist()
    pts = xy.tolist()

    def orient(i, j, k):
        return orient_sign(pts[i][0], pts[i][1], pts[j][0], pts[j][1], pts[k][0], pts[k][1])

    tris = []
    lower = [order[0]]
    upper = [order[0]]
    for p in order[1:]:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) < 0:
            tris.append((lower[-1], lower[-2], p))
            lower.pop()
        lower.append(p)
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) > 0:
            tris.append((upper[-2], upper[-1], p))
            upper.pop()
        upper.append(p)
    return np.array(tris, dtype=np.int64).reshape(-1, 3)


def _lawson(xy: np.ndarray, tris: np.ndarray, seeds: np.ndarray | None):
    """Flip edges until every interior edge passes the exact incircle test.

    Edges whose quadrilateral is cocircular keep their current diagonal.
    """
    pts = xy.tolist()
    opp: dict[tuple[int, int], int] = {}
    for a, b, c in tris.tolist():
        opp[(a, b)] = c
        opp[(b, c)] = a
        opp[(c, a)] = b
    stack = list(opp) if seeds is None else [tuple(e) for e in seeds.tolist()]
    flips = 0
    while stack:
        a, b = stack.pop()
        c = opp.get((a, b))
        d = opp.get((b, a))
        if c is None or d is None:
            continue
        pa, pb, pc, pd = pts[a], pts[b], pts[c], pts[d]
        if incircle_sign(pa[0], pa[1], pb[0], pb[1], pc[0], pc[1], pd[0], pd[1]) <= 0:
            continue
        # (a,b,c) and (b,a,d) become (a,d,c) and (d,b,c).
        for key in ((a, b), (b, a)):
            del opp[key]
        opp[(a, d)] = c
        opp[(d, c)] = a
        opp[(c, a)] = d
        opp[(d, b)] = c
        opp[(b, c)] = d
        opp[(c, d)] = b
        stack.extend(((a, d), (d, b), (b, c), (c, a)))
        flips += 1
    out = [(a, b, c) for (a, b), c in opp.items() if a < b and a < c]
    return np.array(out, dtype=np.int64).reshape(-1, 3), flips
