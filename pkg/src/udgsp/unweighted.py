"""Hop-count shortest path trees by growing levels through Delaunay edges.

Round ``i`` starts from the level ``W[i-1]`` with a fresh nearest-neighbour
index over it.  Candidates are Delaunay neighbours of the queue; a candidate
joins ``W[i]`` when it is still unreached and its nearest point in ``W[i-1]``
lies within the radius, and then becomes a queue entry itself.  The explicit
unit-disk graph is never built.

Acceptance of a candidate and its parent depend only on ``W[i-1]``, never on
queue order, so the default solver expands the queue one wave at a time with
vectorised lookups.  ``method="sequential"`` is the one-point-at-a-time FIFO
form, kept for traces and cross-checks.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .delaunay import DelaunayTriangulation, build_delaunay
from .geom import PointSet
from .nn_index import NnIndex
from .tree import NIL, ShortestPathTree


@dataclass(frozen=True)
class LevelSet:
    level: int
    members: tuple[int, ...]


def unweighted_sssp(ps: PointSet, s: int, r: float = 1.0, *,
                    dt: DelaunayTriangulation | None = None,
                    method: str = "wave", trace: bool = False) -> ShortestPathTree:
    s = ps.check_index(s)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    if method not in ("wave", "sequential"):
        raise ValueError(f"unknown method {method!r}")
    if dt is None:
        dt = build_delaunay(ps)
    elif dt.vertex_count != len(ps):
        raise ValueError("triangulation does not match the point set")
    run = _sequential if method == "sequential" else _waves
    return run(ps, s, float(r), dt, trace)


def _waves(ps, s, r, dt, trace):
    xy = ps.coords
    n = len(xy)
    r2 = r * r
    indptr, indices = dt.indptr, dt.indices
    dist = np.full(n, np.inf)
    parent = np.full(n, NIL, dtype=np.int64)
    dist[s] = 0.0
    queued = np.zeros(n, dtype=np.int64)
    rejected_in = np.zeros(n, dtype=np.int64)  # round in which a candidate failed
    events = [] if trace else None
    inspections = nn_queries = 0

    level = np.array([s], dtype=np.int64)
    i = 1
    while len(level):
        nn = NnIndex(ps, level)
        queue = level
        found = []
        while len(queue):
            queued[queue] += 1
            starts = indptr[queue]
            lens = indptr[queue + 1] - starts
            total = int(lens.sum())
            inspections += total
            if events is not None:
                events.append((i, "EXPAND", tuple(queue.tolist())))
            if total == 0:
                break
            offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
            cand = indices[offs]
            cand = np.unique(cand[np.isinf(dist[cand]) & (rejected_in[cand] != i)])
            if not len(cand):
                break
            nn_queries += len(cand)
            w, sq = nn.nearest_many(xy[cand])
            ok = sq <= r2
            rejected_in[cand[~ok]] = i
            queue = cand[ok]
            dist[queue] = i
            parent[queue] = w[ok]
            found.append(queue)
            if events is not None and len(queue):
                events.append((i, "ACCEPT", tuple(queue.tolist())))
        level = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
        i += 1

    stats = {"rounds": i - 1, "edge_inspections": inspections, "nn_queries": nn_queries,
             "max_queue_entries": int(queued.max()), "queue_entries": queued}
    return ShortestPathTree(s, dist, parent, r, "unweighted", stats, events)


def _sequential(ps, s, r, dt, trace):
    xy = ps.coords
    n = len(xy)
    r2 = r * r
    adj = dt.adjacency
    dist = np.full(n, np.inf)
    parent = np.full(n, NIL, dtype=np.int64)
    dist[s] = 0.0
    queued = np.zeros(n, dtype=np.int64)
    events = [] if trace else None
    inspections = nn_queries = 0

    level = [s]
    i = 1
    while level:
        nn = NnIndex(ps, level)
        queue = deque(level)
        for q in level:
            queued[q] += 1
        found = []
        while queue:
            q = queue.popleft()
            if events is not None:
                events.append((i, "EXPAND", (q,)))
            for p in adj[q]:
                inspections += 1
                nn_queries += 1
                w, sq = nn.nearest(xy[p])
                if dist[p] == np.inf and sq <= r2:
                    dist[p] = i
                    parent[p] = w
                    queue.append(p)
                    queued[p] += 1
                    found.append(p)
                    if events is not None:
                        events.append((i, "ACCEPT", (p,)))
        level = found
        i += 1

    stats = {"rounds": i - 1, "edge_inspections": inspections, "nn_queries": nn_queries,
             "max_queue_entries": int(queued.max()), "queue_entries": queued}
    return ShortestPathTree(s, dist, parent, r, "unweighted", stats, events)


def levels(tree: ShortestPathTree) -> list[LevelSet]:
    """Points grouped by hop distance, level 0 first."""
    reach = tree.reachable()
    d = tree.dist[reach].astype(np.int64)
    order = np.lexsort((reach, d))
    reach, d = reach[order], d[order]
    cuts = np.flatnonzero(np.diff(d)) + 1
    return [LevelSet(int(grp_d[0]), tuple(grp.tolist()))
            for grp, grp_d in zip(np.split(reach, cuts), np.split(d, cuts))]
