from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

UNREACHABLE = math.inf
NIL = -1


@dataclass(frozen=True, eq=False)
class ShortestPathTree:
    """Distance and parent tables of a single-source shortest path tree.

    ``dist`` is a float array with ``inf`` for unreachable points (hop counts
    in the unweighted case are stored as exact integral floats).  ``parent``
    holds ``-1`` for the source and for unreachable points.
    """

    source: int
    dist: np.ndarray
    parent: np.ndarray
    radius: float = 1.0
    mode: str = "unweighted"
    stats: dict[str, Any] = field(default_factory=dict)
    trace: list[tuple] | None = None

    def __post_init__(self) -> None:
        self.dist.setflags(write=False)
        self.parent.setflags(write=False)

    def __len__(self) -> int:
        return len(self.dist)

    def reachable(self) -> np.ndarray:
        return np.flatnonzero(np.isfinite(self.dist))

    def path_to(self, p: int) -> list[int] | None:
        """Source-to-``p`` path along parents, or ``None`` if unreachable."""
        if not math.isfinite(self.dist[p]):
            return None
        path = [int(p)]
        while path[-1] != self.source:
            path.append(int(self.parent[path[-1]]))
            if len(path) > len(self.dist):
                raise RuntimeError("parent table contains a cycle")
        return path[::-1]


def check_tree(tree: ShortestPathTree, coords: np.ndarray, *, weighted: bool,
               atol: float = 1e-12) -> None:
    """Raise ``AssertionError`` if ``tree`` violates a structural invariant.

    Parents need not match any particular oracle; this checks that they form
    a tree rooted at the source whose edges are graph edges and whose
    distances are consistent.
    """
    n = len(tree.dist)
    s = tree.source
    dist, parent = tree.dist, tree.parent
    r2 = tree.radius * tree.radius
    assert dist[s] == 0 and parent[s] == NIL, "source must have distance 0 and no parent"
    finite = np.isfinite(dist)
    others = np.flatnonzero(finite)
    others = others[others != s]
    assert np.all(parent[~finite] == NIL), "unreachable point has a parent"
    assert np.all(parent[others] >= 0), "reachable point without parent"
    par = parent[others]
    assert np.all(finite[par]), "parent is unreachable"
    d = coords[others] - coords[par]
    sq = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    assert np.all(sq <= r2), "parent edge longer than the radius"
    if weighted:
        expect = dist[par] + np.sqrt(sq)
        assert np.all(np.abs(dist[others] - expect) <= atol), "parent edge length mismatch"
        # strictly positive edges strictly increase distance; zero edges need the walk below
    else:
        assert np.all(dist[others] == dist[par] + 1), "parent is not one hop closer"
    # every reachable point walks back to the source
    state = np.zeros(n, dtype=np.int8)
    state[s] = 2
    for p in others.tolist():
        stack = []
        while state[p] == 0:
            state[p] = 1
            stack.append(p)
            p = int(parent[p])
        assert state[p] == 2, "parent pointers contain a cycle"
        for q in stack:
            state[q] = 2
