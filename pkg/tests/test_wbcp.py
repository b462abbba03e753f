import math

import numpy as np
import pytest

from bcp_fuzz import run_sequence
from udgsp.geom import PointSet
from udgsp.oracle import naive_bcp
from udgsp.wbcp import (RESIDENCY_CONSTANT, WbcpIndex, WeightedBlue, delete_blue, delete_red,
                        insert_blue, min_pair, wbcp_new)


def test_single_blue_two_reds():
    ps = PointSet([(0, 0), (2, 0), (5, 0)])
    idx = wbcp_new(ps, [WeightedBlue(0, 0.0)], [1, 2])
    assert min_pair(idx) == (0, 1, 2.0)


def test_empty_sides():
    ps = PointSet([(0, 0), (2, 0)])
    assert min_pair(wbcp_new(ps, [], [1])) is None
    assert min_pair(wbcp_new(ps, [(0, 1.0)], [])) is None


def test_weight_dominates_proximity():
    ps = PointSet([(0, 0), (4, 0), (1, 0)])
    idx = wbcp_new(ps, [WeightedBlue(0, 10.0), WeightedBlue(1, 0.0)], [2])
    assert min_pair(idx) == (1, 2, 3.0)
    delete_red(idx, 2)
    assert min_pair(idx) is None


def test_insert_then_pair_and_zero_delta():
    ps = PointSet([(0, 0), (3, 4), (3, 4)])
    idx = wbcp_new(ps, [], [1])
    insert_blue(idx, WeightedBlue(0, 0.5))
    assert min_pair(idx) == (0, 1, 5.5)
    insert_blue(idx, WeightedBlue(2, 0.0))       # same location as the red
    assert min_pair(idx) == (2, 1, 0.0)


def test_delete_blue_cases():
    ps = PointSet([(0, 0), (1, 0), (5, 0), (2, 0)])
    idx = wbcp_new(ps, [(0, 0.0)], [2])
    delete_blue(idx, 0)
    assert min_pair(idx) is None

    idx = wbcp_new(ps, [(0, 0.0), (1, 0.0)], [2, 3])
    assert min_pair(idx) == (1, 3, 1.0)
    delete_blue(idx, 1)
    assert min_pair(idx) == naive_bcp(ps.coords, {0: 0.0}, [2, 3]) == (0, 3, 2.0)
    insert_blue(idx, WeightedBlue(1, 0.0))
    before = min_pair(idx)
    delete_blue(idx, 1)
    insert_blue(idx, WeightedBlue(1, 0.0))
    assert min_pair(idx) == before


def test_delete_red_cases():
    ps = PointSet([(0, 0), (1, 0), (3, 0), (9, 9)])
    idx = wbcp_new(ps, [(0, 0.0)], [1, 2, 3])
    before = min_pair(idx)
    delete_red(idx, 3)
    assert min_pair(idx) == before
    delete_red(idx, 1)
    assert min_pair(idx) == (0, 2, 3.0)
    delete_red(idx, 2)
    assert min_pair(idx) is None


def test_far_red_after_near_ones_deleted():
    ps = PointSet([(0, 0), (1, 0), (9, 9)])
    idx = wbcp_new(ps, [(0, 0.25)], [1, 2])
    delete_red(idx, 1)
    assert min_pair(idx) == (0, 2, 0.25 + math.sqrt(162))


def test_tie_rule():
    # every pair at delta 1: smallest blue, then smallest red
    ps = PointSet([(0, 0), (1, 1), (1, 0), (0, 1)])
    idx = wbcp_new(ps, [(2, 0.0), (3, 0.0)], [0, 1])
    assert min_pair(idx) == (2, 0, 1.0)
    delete_red(idx, 0)
    assert min_pair(idx) == (2, 1, 1.0)


def test_errors():
    ps = PointSet([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(ValueError):
        wbcp_new(ps, [(0, 0.0)], [0])
    with pytest.raises(IndexError):
        wbcp_new(ps, [], [7])
    with pytest.raises(ValueError):
        WeightedBlue(0, -1.0)
    idx = wbcp_new(ps, [(0, 0.0)], [1])
    with pytest.raises(ValueError):
        insert_blue(idx, WeightedBlue(0, 1.0))
    with pytest.raises(ValueError):
        insert_blue(idx, WeightedBlue(1, 1.0))
    with pytest.raises(KeyError):
        delete_blue(idx, 2)
    with pytest.raises(KeyError):
        delete_red(idx, 0)


def test_random_split_matches_naive_scan():
    rng = np.random.default_rng(200)
    ps = PointSet(rng.random((200, 2)) * 5)
    perm = rng.permutation(200)
    blues = {int(i): float(rng.uniform(0, 2)) for i in perm[:70]}
    reds = perm[70:].tolist()
    idx = WbcpIndex(ps, blues.items(), reds)
    assert idx.min_pair() == naive_bcp(ps.coords, blues, reds)


def test_fuzz_against_naive_scan():
    rng = np.random.default_rng(12345)
    checked = sum(run_sequence(rng) for _ in range(3000))
    assert checked > 20_000


def test_long_sequence_residency_bound():
    rng = np.random.default_rng(77)
    n = 3000
    ps = PointSet(rng.random((n, 2)) * 20)
    blues = {0: 0.0}
    reds = set(range(1, n))
    idx = WbcpIndex(ps, [(0, 0.0)], sorted(reds))
    peak_ratio = 0.0
    for step in range(2 * n):
        pair = idx.min_pair()
        if pair is None:
            break
        b, r, delta = pair
        if step % 97 == 0:
            assert pair == naive_bcp(ps.coords, blues, reds)
        if rng.random() < 0.4:
            idx.delete_blue(b)
            del blues[b]
        else:
            idx.delete_red(r)
            reds.discard(r)
            idx.insert_blue(WeightedBlue(r, delta))
            blues[r] = delta
        size = len(blues) + len(reds)
        if size:
            peak_ratio = max(peak_ratio, idx.residency() / size)
    assert peak_ratio <= RESIDENCY_CONSTANT
