"""Euclidean-weighted shortest path trees driven by a bichromatic closest pair.

Points are red (unsettled), blue (settled, may still have edges to red
points) or dead (settled, no edge to any red point).  Each iteration asks for
the closest blue/red pair under ``dist[b] + |r - b|``.  If the pair is longer
than the radius the blue point cannot be the last hop to any red point and
dies; otherwise the red point is settled through it and turns blue.
"""
from __future__ import annotations

from enum import IntEnum

import numpy as np

from .geom import PointSet
from .tree import NIL, ShortestPathTree
from .wbcp import RESIDENCY_CONSTANT, WbcpIndex, WeightedBlue

KILL_BLUE = "KILL_BLUE"
SETTLE_RED = "SETTLE_RED"


class Color(IntEnum):
    RED = 0
    BLUE = 1
    DEAD = 2


class InvariantViolation(AssertionError):
    """A test-mode check inside the solver failed."""


def weighted_sssp(ps: PointSet, s: int, r: float = 1.0, *, trace: bool = False,
                  check: bool = False) -> ShortestPathTree:
    """Shortest path tree of G_{<=r}(ps) with Euclidean edge lengths.

    ``trace`` records one ``(iteration, event, indices)`` tuple per loop
    iteration.  ``check`` turns on the linear-scan assertions used by the test
    suite (dead points have no red neighbour, settle order is monotone,
    colours only move forward).
    """
    s = ps.check_index(s)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    r = float(r)
    xy = ps.coords
    n = len(xy)
    r2 = r * r

    dist = np.full(n, np.inf)
    parent = np.full(n, NIL, dtype=np.int64)
    color = np.zeros(n, dtype=np.int8)
    dist[s] = 0.0
    color[s] = Color.BLUE
    n_red = n - 1
    events = [] if trace else None

    bcp = WbcpIndex(ps, [WeightedBlue(s, 0.0)], (i for i in range(n) if i != s))
    iterations = 0
    last_settled = 0.0
    disconnected = False
    while n_red:
        pair = bcp.min_pair()
        if pair is None:
            disconnected = True
            break
        iterations += 1
        b, rr, delta = pair
        dx = xy[b, 0] - xy[rr, 0]
        dy = xy[b, 1] - xy[rr, 1]
        if dx * dx + dy * dy > r2:
            bcp.delete_blue(b)
            color[b] = Color.DEAD
            if events is not None:
                events.append((iterations, KILL_BLUE, (b,)))
            if check:
                _check_dead(xy, color, b, r2)
        else:
            dist[rr] = dist[b] + float(np.sqrt(dx * dx + dy * dy))
            parent[rr] = b
            bcp.delete_red(rr)
            bcp.insert_blue(WeightedBlue(rr, dist[rr]))
            color[rr] = Color.BLUE
            n_red -= 1
            if events is not None:
                events.append((iterations, SETTLE_RED, (b, rr)))
            if check:
                if dist[rr] < last_settled:
                    raise InvariantViolation(f"settle order decreased at point {rr}")
                last_settled = dist[rr]

    if check and iterations > max(2 * n - 2, 0):
        raise InvariantViolation(f"{iterations} iterations exceed 2n-2 for n={n}")
    stats = {
        "iterations": iterations,
        "disconnected": disconnected,
        "bcp_ops": bcp.counters["updates"] + bcp.counters["queries"],
        "bcp_refreshes": bcp.counters["refreshes"],
        "peak_residency": bcp.counters["peak_residency"],
        "residency_constant": RESIDENCY_CONSTANT,
        "colors": color,
    }
    return ShortestPathTree(s, dist, parent, r, "weighted", stats, events)


def _check_dead(xy: np.ndarray, color: np.ndarray, b: int, r2: float) -> None:
    red = np.flatnonzero(color == Color.RED)
    d = xy[red] - xy[b]
    close = red[d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] <= r2]
    if len(close):
        raise InvariantViolation(f"killed blue {b} still has red neighbour {int(close[0])}")


def color_trace(tree: ShortestPathTree) -> list[tuple[int, str, tuple[int, ...]]]:
    if tree.trace is None:
        raise ValueError("tree was computed without trace=True")
    return list(tree.trace)
