import numpy as np
import pytest

from udgsp.geom import PointSet
from udgsp.nn_index import build_nn, nearest


def linear_scan(xy, members, q):
    best = None
    for m in sorted(members):
        dx = q[0] - xy[m][0]
        dy = q[1] - xy[m][1]
        key = (dx * dx + dy * dy, m)
        if best is None or key < best:
            best = key
    return best[1], best[0]


def test_single_member():
    ps = PointSet(np.random.default_rng(0).random((10, 2)))
    idx = build_nn(ps, [0])
    for q in [(0, 0), (5, 5), (-3, 2)]:
        assert nearest(idx, q)[0] == 0


def test_basic_and_tie_rule():
    ps = PointSet([(0, 0), (5, 0), (2, 0), (2, 4)])
    idx = build_nn(ps, [0, 1])
    assert nearest(idx, (1, 0)) == (0, 1.0)
    assert nearest(idx, (2.5, 0))[0] == 0         # equidistant: smaller index
    idx = build_nn(ps, [3, 2])
    assert nearest(idx, (2, 2)) == (2, 4.0)


def test_lattice_ties():
    pts = [(x, y) for x in range(6) for y in range(6)]
    ps = PointSet(pts)
    idx = build_nn(ps, range(36))
    xy = ps.coords.tolist()
    for q in [(2.5, 2.5), (0.5, 0.5), (3, 2.5), (2.5, 3.5), (10, 10)]:
        assert nearest(idx, q) == linear_scan(xy, range(36), q)


def test_empty_members_rejected():
    ps = PointSet([(0, 0)])
    with pytest.raises(ValueError):
        build_nn(ps, [])
    with pytest.raises(IndexError):
        build_nn(ps, [3])


def test_agrees_with_linear_scan():
    rng = np.random.default_rng(1)
    ps = PointSet(rng.random((2000, 2)) * 10)
    xy = ps.coords.tolist()
    members = sorted(rng.choice(2000, size=300, replace=False).tolist())
    idx = build_nn(ps, members)
    queries = rng.random((10_000, 2)) * 12 - 1
    w, sq = idx.nearest_many(queries)
    for k in range(0, 10_000, 7):
        assert (int(w[k]), float(sq[k])) == linear_scan(xy, members, queries[k].tolist())
    # full membership, vectorised vs brute force argmin
    full = build_nn(ps, range(2000))
    w, sq = full.nearest_many(queries)
    d = queries[:, None, :] - ps.coords[None, :, :]
    allsq = d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1]
    assert np.array_equal(w, np.argmin(allsq, axis=1))
    assert np.array_equal(sq, allsq.min(axis=1))


def test_insertion_order_and_rebuild_do_not_matter():
    rng = np.random.default_rng(2)
    ps = PointSet(rng.integers(0, 8, size=(200, 2)).astype(float))   # many exact ties
    members = rng.choice(200, size=80, replace=False)
    a = build_nn(ps, members)
    b = build_nn(ps, members[::-1])
    q = rng.integers(0, 16, size=(2000, 2)) / 2.0
    wa, sa = a.nearest_many(q)
    wb, sb = b.nearest_many(q)
    assert np.array_equal(wa, wb) and np.array_equal(sa, sb)
    xy = ps.coords.tolist()
    for k in range(0, 2000, 13):
        assert (int(wa[k]), float(sa[k])) == linear_scan(xy, members.tolist(), q[k].tolist())
    for k in range(2000):
        assert all(sa[k] <= (q[k][0] - xy[m][0]) ** 2 + (q[k][1] - xy[m][1]) ** 2 for m in members[:5])
