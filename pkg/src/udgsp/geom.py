"""Points, point sets and exact geometric predicates.

Orientation and incircle use a floating-point filter with a static error
bound (Shewchuk's stage-A bounds) and fall back to exact rational arithmetic
when the filter cannot certify the sign.  Distance threshold tests are plain
double-precision squared distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

_EPS = 2.0 ** -53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_INCIRCLE_BOUND = (10.0 + 96.0 * _EPS) * _EPS


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Circle(IntEnum):
    OUTSIDE = -1
    ON = 0
    INSIDE = 1


class DegenerateTriangleError(ValueError):
    """Raised when a circle predicate is asked about three collinear points."""


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in {self!r}")


PointLike = Point | Sequence[float]


def _xy(p: PointLike) -> tuple[float, float]:
    if isinstance(p, Point):
        return p.x, p.y
    return float(p[0]), float(p[1])


class PointSet:
    """Immutable, indexed collection of planar points.

    Coordinates live in a read-only ``(n, 2)`` float64 array; the row index is
    the point identifier used everywhere else in the package.
    """

    __slots__ = ("_xy",)

    def __init__(self, points: Iterable[PointLike] | np.ndarray):
        if isinstance(points, np.ndarray):
            arr = np.array(points, dtype=np.float64, copy=True)
        else:
            arr = np.array([_xy(p) for p in points], dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            if arr.size == 0:
                raise ValueError("a point set needs at least one point")
            raise ValueError(f"expected an (n, 2) array of coordinates, got shape {arr.shape}")
        if len(arr) == 0:
            raise ValueError("a point set needs at least one point")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.all(np.isfinite(arr), axis=1))[0])
            raise ValueError(f"non-finite coordinate at point {bad}")
        arr.setflags(write=False)
        self._xy = arr

    @property
    def coords(self) -> np.ndarray:
        return self._xy

    def __len__(self) -> int:
        return len(self._xy)

    def __getitem__(self, i: int) -> Point:
        x, y = self._xy[i]
        return Point(float(x), float(y))

    def __iter__(self):
        for x, y in self._xy:
            yield Point(float(x), float(y))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return np.array_equal(self._xy, other._xy)

    def __hash__(self) -> int:
        return hash(self._xy.tobytes())

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"

    def check_index(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
            raise TypeError(f"point index must be an integer, got {i!r}")
        if not 0 <= i < len(self._xy):
            raise IndexError(f"point index {i} out of range for {len(self._xy)} points")
        return int(i)


def squared_distance(a: PointLike, b: PointLike) -> float:
    ax, ay = _xy(a)
    bx, by = _xy(b)
    dx = ax - bx
    dy = ay - by
    return dx * dx + dy * dy


def _orient_exact(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient_sign(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of the orientation determinant on raw coordinates (1, 0 or -1)."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    bound = _ORIENT_BOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orientation(a: PointLike, b: PointLike, c: PointLike) -> Orientation:
    return Orientation(orient_sign(*_xy(a), *_xy(b), *_xy(c)))


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    ax, ay, bx, by, cx, cy, dx, dy = map(Fraction, (ax, ay, bx, by, cx, cy, dx, dy))
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
           + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
    return (det > 0) - (det < 0)


def incircle_sign(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of the raw incircle determinant: positive when d is inside the
    circle through a, b, c given in counter-clockwise order."""
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (alift * (abs(bdxcdy) + abs(cdxbdy))
                 + blift * (abs(cdxady) + abs(adxcdy))
                 + clift * (abs(adxbdy) + abs(bdxady)))
    bound = _INCIRCLE_BOUND * permanent
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def incircle(a: PointLike, b: PointLike, c: PointLike, d: PointLike) -> Circle:
    """Position of ``d`` relative to the circle through ``a``, ``b``, ``c``.

    The answer does not depend on the order of the first three points.
    """
    ax, ay = _xy(a)
    bx, by = _xy(b)
    cx, cy = _xy(c)
    o = orient_sign(ax, ay, bx, by, cx, cy)
    if o == 0:
        raise DegenerateTriangleError("incircle needs a non-degenerate triangle")
    return Circle(o * incircle_sign(ax, ay, bx, by, cx, cy, *_xy(d)))


# Vectorised filters.  They return +1/-1 where the float evaluation is
# certified and 0 where an exact evaluation is still required.

def orient_filter(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    detleft = (a[:, 0] - c[:, 0]) * (b[:, 1] - c[:, 1])
    detright = (a[:, 1] - c[:, 1]) * (b[:, 0] - c[:, 0])
    det = detleft - detright
    bound = _ORIENT_BOUND * (np.abs(detleft) + np.abs(detright))
    out = np.zeros(len(det), dtype=np.int8)
    out[det > bound] = 1
    out[-det > bound] = -1
    return out


def incircle_filter(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray) -> np.ndarray:
    adx, ady = a[:, 0] - d[:, 0], a[:, 1] - d[:, 1]
    bdx, bdy = b[:, 0] - d[:, 0], b[:, 1] - d[:, 1]
    cdx, cdy = c[:, 0] - d[:, 0], c[:, 1] - d[:, 1]
    bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
    cdxady, adxcdy = cdx * ady, adx * cdy
    adxbdy, bdxady = adx * bdy, bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (alift * (np.abs(bdxcdy) + np.abs(cdxbdy))
                 + blift * (np.abs(cdxady) + np.abs(adxcdy))
                 + clift * (np.abs(adxbdy) + np.abs(bdxady)))
    bound = _INCIRCLE_BOUND * permanent
    out = np.zeros(len(det), dtype=np.int8)
    out[det > bound] = 1
    out[-det > bound] = -1
    return out


def orient_many(xy: np.ndarray, ia: np.ndarray, ib: np.ndarray, ic: np.ndarray) -> np.ndarray:
    """Exact orientation signs for index triples into ``xy``."""
    out = orient_filter(xy[ia], xy[ib], xy[ic])
    for k in np.flatnonzero(out == 0):
        a, b, c = xy[ia[k]], xy[ib[k]], xy[ic[k]]
        out[k] = _orient_exact(a[0], a[1], b[0], b[1], c[0], c[1])
    return out


def incircle_many(xy: np.ndarray, ia, ib, ic, id_) -> np.ndarray:
    """Exact raw incircle signs (counter-clockwise convention) for index quads."""
    out = incircle_filter(xy[ia], xy[ib], xy[ic], xy[id_])
    for k in np.flatnonzero(out == 0):
        a, b, c, d = xy[ia[k]], xy[ib[k]], xy[ic[k]], xy[id_[k]]
        out[k] = _incircle_exact(a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1])
    return out
