"""Dynamic bichromatic closest pair under an additively weighted metric.

Blue points carry a fixed weight and the distance from a red point ``r`` to a
blue point ``b`` is ``weight(b) + |r - b|``.  Blues may be inserted and
deleted; reds may only be deleted.

Each blue keeps one heap entry holding its closest red at the time the entry
was made.  Deleting reds can only move a blue's closest red further away, so a
stale entry is a lower bound: when one surfaces at the top of the heap it is
recomputed and pushed back, and the first entry that is still current is the
true minimum.  Reds sit in a k-d tree that tracks live counts per node and
is rebuilt once half of its slots are dead.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numba import njit

from .geom import PointSet

# Heap entries plus red-tree slots never exceed RESIDENCY_CONSTANT * (|B| + |R|).
RESIDENCY_CONSTANT = 4


@dataclass(frozen=True, slots=True)
class WeightedBlue:
    index: int
    weight: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.weight) and self.weight >= 0):
            raise ValueError(f"blue weight must be finite and nonnegative, got {self.weight}")


class WbcpIndex:
    def __init__(self, ps: PointSet, blues: Iterable[WeightedBlue | tuple[int, float]] = (),
                 reds: Iterable[int] = ()):
        self._ps = ps
        self._xy = ps.coords
        n = len(ps)
        self._weight: dict[int, float] = {}
        self._entry: dict[int, tuple[float, int]] = {}
        self._heap: list[tuple[float, int, int]] = []
        self._red = np.zeros(n, dtype=bool)
        self._n_red = 0
        self.counters = {"updates": 0, "queries": 0, "refreshes": 0, "rebuilds": 0,
                         "peak_residency": 0}

        red_list = [ps.check_index(i) for i in reds]
        if len(set(red_list)) != len(red_list):
            raise ValueError("duplicate red index")
        blue_list = [b if isinstance(b, WeightedBlue) else WeightedBlue(*b) for b in blues]
        blue_ids = [ps.check_index(b.index) for b in blue_list]
        if len(set(blue_ids)) != len(blue_ids):
            raise ValueError("duplicate blue index")
        if set(blue_ids) & set(red_list):
            raise ValueError("blue and red index sets overlap")

        self._red[red_list] = True
        self._n_red = len(red_list)
        self._rebuild_tree()
        for b in blue_list:
            self._weight[b.index] = float(b.weight)
            self._refresh(b.index)
        self._note_residency()

    # -- public operations -------------------------------------------------

    @property
    def blues(self) -> dict[int, float]:
        return dict(self._weight)

    @property
    def reds(self) -> list[int]:
        return np.flatnonzero(self._red).tolist()

    def is_blue(self, i: int) -> bool:
        return i in self._weight

    def is_red(self, i: int) -> bool:
        return bool(self._red[i])

    def min_pair(self) -> tuple[int, int, float] | None:
        """``(blue, red, delta)`` minimizing delta, or ``None`` if a side is empty.

        Ties go to the smaller blue index, then the smaller red index.
        """
        self.counters["queries"] += 1
        if not self._weight or not self._n_red:
            return None
        heap = self._heap
        while heap:
            delta, b, r = heap[0]
            if self._entry.get(b) != (delta, r):
                heapq.heappop(heap)
                continue
            if self._red[r]:
                return b, r, delta
            heapq.heappop(heap)
            del self._entry[b]
            self._refresh(b)
        raise AssertionError("blue entries missing from the heap")

    def insert_blue(self, b: WeightedBlue | tuple[int, float]) -> None:
        if not isinstance(b, WeightedBlue):
            b = WeightedBlue(*b)
        i = self._ps.check_index(b.index)
        if i in self._weight or self._red[i]:
            raise ValueError(f"point {i} is already blue or red")
        self.counters["updates"] += 1
        self._weight[i] = float(b.weight)
        self._refresh(i)
        self._note_residency()

    def delete_blue(self, i: int) -> None:
        if i not in self._weight:
            raise KeyError(f"point {i} is not blue")
        self.counters["updates"] += 1
        del self._weight[i]
        self._entry.pop(i, None)
        if len(self._heap) > 2 * (len(self._weight) + self._n_red):
            self._heap = [(d, b, r) for b, (d, r) in self._entry.items()]
            heapq.heapify(self._heap)

    def delete_red(self, i: int) -> None:
        if not (0 <= i < len(self._red)) or not self._red[i]:
            raise KeyError(f"point {i} is not red")
        self.counters["updates"] += 1
        self._red[i] = False
        self._n_red -= 1
        self._tree.delete(i)
        if self._n_red * 2 < len(self._slots):
            self._rebuild_tree()
        if len(self._heap) > 2 * (len(self._weight) + self._n_red):
            self._heap = [(d, b, r) for b, (d, r) in self._entry.items()]
            heapq.heapify(self._heap)

    def residency(self) -> int:
        """Stored candidate entries plus red-tree slots."""
        return len(self._heap) + len(self._slots)

    # -- internals -----------------------------------------------------------

    def _note_residency(self) -> None:
        res = self.residency()
        if res > self.counters["peak_residency"]:
            self.counters["peak_residency"] = res

    def _rebuild_tree(self) -> None:
        self.counters["rebuilds"] += 1
        self._slots = np.flatnonzero(self._red)
        self._tree = _RedTree(self._xy, self._slots) if len(self._slots) else None

    def _refresh(self, b: int) -> None:
        self.counters["refreshes"] += 1
        if self._tree is None:
            return
        x, y = self._xy[b].tolist()
        delta, r = self._tree.nearest(x, y, self._weight[b])
        self._entry[b] = (delta, r)
        heapq.heappush(self._heap, (delta, b, r))


class _RedTree:
    """k-d tree over a fixed set of points with deletion.

    Every node keeps the number of live points below it, so searches skip
    subtrees that only hold deleted points.
    """

    LEAF_SIZE = 8

    def __init__(self, xy: np.ndarray, ids: np.ndarray):
        m = len(ids)
        pts = xy[ids]
        cap = 2 * (m // self.LEAF_SIZE + 1) * 2
        self.box = np.empty((cap, 4))
        self.child = np.full((cap, 2), -1, dtype=np.int64)
        self.up = np.full(cap, -1, dtype=np.int64)
        self.count = np.zeros(cap, dtype=np.int64)
        self.span = np.zeros((cap, 2), dtype=np.int64)
        perm = np.arange(m)
        n_nodes = 0
        stack = [(0, m, -1, 0)]
        while stack:
            lo, hi, up, side = stack.pop()
            node = n_nodes
            n_nodes += 1
            if up >= 0:
                self.child[up, side] = node
            sub = pts[perm[lo:hi]]
            mn, mx = sub.min(axis=0), sub.max(axis=0)
            self.box[node] = (mn[0], mn[1], mx[0], mx[1])
            self.up[node] = up
            self.count[node] = hi - lo
            self.span[node] = (lo, hi)
            if hi - lo <= self.LEAF_SIZE:
                continue
            dim = 0 if mx[0] - mn[0] >= mx[1] - mn[1] else 1
            half = (hi - lo) // 2
            order = np.argpartition(sub[:, dim], half)
            perm[lo:hi] = perm[lo:hi][order]
            stack.append((lo + half, hi, node, 1))
            stack.append((lo, lo + half, node, 0))
        self.box = self.box[:n_nodes]
        self.child = self.child[:n_nodes]
        self.up = self.up[:n_nodes]
        self.count = self.count[:n_nodes]
        self.span = self.span[:n_nodes]
        self.px = np.ascontiguousarray(pts[perm, 0])
        self.py = np.ascontiguousarray(pts[perm, 1])
        self.ids = ids[perm].astype(np.int64)
        self.alive = np.ones(m, dtype=np.bool_)
        self.leaf_of = np.empty(m, dtype=np.int64)
        leaves = np.flatnonzero(self.child[:, 0] < 0)
        for node in leaves.tolist():
            lo, hi = self.span[node]
            self.leaf_of[lo:hi] = node
        self._slot_of = {g: k for k, g in enumerate(self.ids.tolist())}

    def delete(self, g: int) -> None:
        _tree_delete(self._slot_of[g], self.alive, self.leaf_of, self.up, self.count)

    def nearest(self, x: float, y: float, w: float) -> tuple[float, int]:
        """Live point minimizing ``(w + distance, index)``."""
        delta, r = _tree_nearest(x, y, w, self.box, self.child, self.count, self.span,
                                 self.px, self.py, self.ids, self.alive)
        return delta, int(r)


@njit(cache=True)
def _tree_delete(k, alive, leaf_of, up, count):
    if not alive[k]:
        return
    alive[k] = False
    node = leaf_of[k]
    while node >= 0:
        count[node] -= 1
        node = up[node]


@njit(cache=True)
def _tree_nearest(x, y, w, box, child, count, span, px, py, ids, alive):
    best_d = np.inf
    best_id = -1
    stack_node = np.empty(256, dtype=np.int64)
    stack_lb = np.empty(256)
    top = 0
    stack_node[0] = 0
    stack_lb[0] = 0.0
    top = 1
    while top > 0:
        top -= 1
        node = stack_node[top]
        if stack_lb[top] > best_d or count[node] == 0:
            continue
        if child[node, 0] < 0:
            for k in range(span[node, 0], span[node, 1]):
                if alive[k]:
                    dx = px[k] - x
                    dy = py[k] - y
                    d = w + np.sqrt(dx * dx + dy * dy)
                    if d < best_d or (d == best_d and ids[k] < best_id):
                        best_d = d
                        best_id = ids[k]
            continue
        # push the farther child first so the nearer one is searched first
        lb0 = np.inf
        lb1 = np.inf
        for side in range(2):
            c = child[node, side]
            if count[c] == 0:
                continue
            dx = 0.0
            if x < box[c, 0]:
                dx = box[c, 0] - x
            elif x > box[c, 2]:
                dx = x - box[c, 2]
            dy = 0.0
            if y < box[c, 1]:
                dy = box[c, 1] - y
            elif y > box[c, 3]:
                dy = y - box[c, 3]
            lb = w + np.sqrt(dx * dx + dy * dy)
            if side == 0:
                lb0 = lb
            else:
                lb1 = lb
        first, second = 0, 1
        if lb1 > lb0:
            first, second = 1, 0
        for side in (first, second):
            lb = lb0 if side == 0 else lb1
            if lb <= best_d:
                stack_node[top] = child[node, side]
                stack_lb[top] = lb
                top += 1
    return best_d, best_id


def wbcp_new(ps: PointSet, blues: Iterable[WeightedBlue | tuple[int, float]],
             reds: Iterable[int]) -> WbcpIndex:
    return WbcpIndex(ps, blues, reds)


def min_pair(idx: WbcpIndex):
    return idx.min_pair()


def insert_blue(idx: WbcpIndex, b: WeightedBlue) -> None:
    idx.insert_blue(b)


def delete_blue(idx: WbcpIndex, i: int) -> None:
    idx.delete_blue(i)


def delete_red(idx: WbcpIndex, i: int) -> None:
    idx.delete_red(i)
