"""Static nearest-neighbour index over a subset of a point set.

Backed by :class:`scipy.spatial.cKDTree`.  Answers are the member minimizing
the double-precision squared distance, ties going to the smallest point index.
The tree's own distance arithmetic is only used to find candidates; the final
choice is always made on :func:`~udgsp.geom.squared_distance` values.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .geom import PointLike, PointSet, _xy

# Relative gap below which two candidate distances are treated as a possible tie.
_TIE_REL = 1e-9


class NnIndex:
    __slots__ = ("members", "_xy", "_tree")

    def __init__(self, ps: PointSet, members: Sequence[int] | np.ndarray):
        members = np.unique(np.asarray(members, dtype=np.int64))
        if len(members) == 0:
            raise ValueError("nearest-neighbour index needs at least one member")
        if members[0] < 0 or members[-1] >= len(ps):
            raise IndexError("member index out of range")
        members.setflags(write=False)
        self.members = members
        self._xy = ps.coords[members]
        self._tree = cKDTree(self._xy, balanced_tree=False, compact_nodes=False)

    def __len__(self) -> int:
        return len(self.members)

    def nearest(self, q: PointLike) -> tuple[int, float]:
        w, sq = self.nearest_many(np.array([_xy(q)], dtype=np.float64))
        return int(w[0]), float(sq[0])

    def nearest_many(self, queries: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorised :meth:`nearest` for an ``(k, 2)`` array of query points."""
        queries = np.asarray(queries, dtype=np.float64).reshape(-1, 2)
        k = len(queries)
        if k == 0:
            return np.empty(0, dtype=np.int64), np.empty(0)
        m = len(self.members)
        if m == 1:
            d = queries - self._xy[0]
            return np.zeros(k, dtype=np.int64) + self.members[0], d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]

        _, loc = self._tree.query(queries, k=2)
        c = self._xy[loc]                                     # (k, 2, 2)
        dx = queries[:, None, 0] - c[:, :, 0]
        dy = queries[:, None, 1] - c[:, :, 1]
        sq = dx * dx + dy * dy
        best = np.where(sq[:, 1] < sq[:, 0], 1, 0)
        rows = np.arange(k)
        out_loc = loc[rows, best]
        out_sq = sq[rows, best]
        lo = np.minimum(sq[:, 0], sq[:, 1])
        hi = np.maximum(sq[:, 0], sq[:, 1])
        for j in np.flatnonzero(hi <= lo * (1.0 + _TIE_REL)):
            out_loc[j], out_sq[j] = self._resolve_tie(queries[j], lo[j])
        return self.members[out_loc], out_sq

    def _resolve_tie(self, q: np.ndarray, sq_min: float) -> tuple[int, float]:
        radius = np.sqrt(sq_min * (1.0 + 4 * _TIE_REL))
        cand = np.asarray(self._tree.query_ball_point(q, radius), dtype=np.int64)
        d = self._xy[cand] - q
        sq = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
        # members are sorted, so the smallest local index is the smallest point index
        j = np.lexsort((cand, sq))[0]
        return int(cand[j]), float(sq[j])


def build_nn(ps: PointSet, members: Sequence[int] | np.ndarray) -> NnIndex:
    return NnIndex(ps, members)


def nearest(idx: NnIndex, q: PointLike) -> tuple[int, float]:
    return idx.nearest(q)
