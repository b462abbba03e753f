"""Random operation sequences for the weighted closest pair structure,
replayed against the naive scan after every step."""
from __future__ import annotations

import numpy as np

from udgsp.geom import PointSet
from udgsp.oracle import naive_bcp
from udgsp.wbcp import RESIDENCY_CONSTANT, WbcpIndex, WeightedBlue


def run_sequence(rng: np.random.Generator, max_points: int = 14, steps: int = 8) -> int:
    """Run one sequence; return the number of checked ``min_pair`` answers.

    Raises ``AssertionError`` on the first disagreement.
    """
    n = int(rng.integers(2, max_points + 1))
    lattice = rng.random() < 0.5
    if lattice:        # exact distance ties and repeated locations
        xy = rng.integers(0, 5, size=(n, 2)).astype(float)
    else:
        xy = rng.uniform(0, 4, size=(n, 2))
    ps = PointSet(xy)

    def weight():
        return float(rng.integers(0, 4)) if lattice else float(rng.uniform(0, 3))

    role = rng.integers(0, 3, size=n)            # 0 free, 1 blue, 2 red
    blues = {i: weight() for i in np.flatnonzero(role == 1).tolist()}
    reds = set(np.flatnonzero(role == 2).tolist())
    free = set(np.flatnonzero(role == 0).tolist())
    idx = WbcpIndex(ps, [WeightedBlue(i, w) for i, w in blues.items()], sorted(reds))
    checked = 0

    def check():
        nonlocal checked
        got = idx.min_pair()
        want = naive_bcp(ps.coords, blues, reds)
        assert got == want, (got, want, blues, sorted(reds), xy.tolist())
        assert idx.residency() <= RESIDENCY_CONSTANT * (len(blues) + len(reds)) or not (blues or reds)
        checked += 1

    check()
    for _ in range(steps):
        ops = []
        if free:
            ops.append("insert")
        if blues:
            ops.append("delete_blue")
        if reds:
            ops.append("delete_red")
        if not ops:
            break
        op = ops[int(rng.integers(len(ops)))]
        if op == "insert":
            i = sorted(free)[int(rng.integers(len(free)))]
            free.discard(i)
            blues[i] = weight()
            idx.insert_blue(WeightedBlue(i, blues[i]))
        elif op == "delete_blue":
            cur = idx.min_pair()
            # bias towards deleting the current minimum's blue
            i = cur[0] if cur is not None and rng.random() < 0.5 else sorted(blues)[int(rng.integers(len(blues)))]
            del blues[i]
            free.add(i)
            idx.delete_blue(i)
        else:
            cur = idx.min_pair()
            i = cur[1] if cur is not None and rng.random() < 0.5 else sorted(reds)[int(rng.integers(len(reds)))]
            reds.discard(i)
            free.add(i)                    # a settled red may come back as blue
            idx.delete_red(i)
        check()
    return checked
