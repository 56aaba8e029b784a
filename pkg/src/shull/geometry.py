"""Planar predicates and constructions.

The predicates are evaluated in float64 first.  When the determinant is
small compared with the magnitude of the terms that produced it, it is
recomputed in double-double arithmetic with the inputs translated so one
vertex sits at the origin; only if it is still below the threshold is the
configuration reported as degenerate.

The ``*_kernel`` functions are numba-compiled and shared by the sweep and
the flipping code.  The plain functions at the bottom wrap them for use on
individual points.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import CollinearInput, InvalidInput

#: Relative threshold below which a determinant counts as zero.  It is
#: applied to the determinant divided by the sum of the absolute values of
#: the products it is built from.
REL_EPS = 1e-12

_SPLITTER = 134217729.0  # 2**27 + 1


class _XY(NamedTuple):
    x: float
    y: float


class Point(_XY):
    """Immutable 2D point with finite coordinates."""

    __slots__ = ()

    def __new__(cls, x, y):
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidInput(f"point coordinates must be finite, got ({x}, {y})")
        return super().__new__(cls, x, y)


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class CirclePosition(enum.IntEnum):
    OUTSIDE = -1
    ON_CIRCLE = 0
    INSIDE = 1


class Circumcircle(NamedTuple):
    center: Point
    radius_sq: float


# --- double-double helpers -------------------------------------------------


@njit(cache=True, error_model="numpy")
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit(cache=True, error_model="numpy")
def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@njit(cache=True, error_model="numpy")
def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit(cache=True, error_model="numpy")
def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    e += al + bl
    hi = s + e
    return hi, e - (hi - s)


@njit(cache=True, error_model="numpy")
def _dd_sub(ah, al, bh, bl):
    return _dd_add(ah, al, -bh, -bl)


@njit(cache=True, error_model="numpy")
def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    hi = p + e
    return hi, e - (hi - p)


@njit(cache=True, error_model="numpy")
def _orient2d_dd(ax, ay, bx, by, cx, cy):
    bxh, bxl = _two_sum(bx, -ax)
    byh, byl = _two_sum(by, -ay)
    cxh, cxl = _two_sum(cx, -ax)
    cyh, cyl = _two_sum(cy, -ay)
    lh, ll = _dd_mul(bxh, bxl, cyh, cyl)
    rh, rl = _dd_mul(byh, byl, cxh, cxl)
    dh, dl = _dd_sub(lh, ll, rh, rl)
    return dh + dl


@njit(cache=True, error_model="numpy")
def _lift_dd(xh, xl, yh, yl):
    x2h, x2l = _dd_mul(xh, xl, xh, xl)
    y2h, y2l = _dd_mul(yh, yl, yh, yl)
    return _dd_add(x2h, x2l, y2h, y2l)


@njit(cache=True, error_model="numpy")
def _incircle_dd(ax, ay, bx, by, cx, cy, px, py):
    # rows b - a, c - a, p - a of the lifted determinant; the 4x4 lifted
    # determinant equals minus this 3x3 one when a is the origin
    bxh, bxl = _two_sum(bx, -ax)
    byh, byl = _two_sum(by, -ay)
    cxh, cxl = _two_sum(cx, -ax)
    cyh, cyl = _two_sum(cy, -ay)
    pxh, pxl = _two_sum(px, -ax)
    pyh, pyl = _two_sum(py, -ay)
    b2h, b2l = _lift_dd(bxh, bxl, byh, byl)
    c2h, c2l = _lift_dd(cxh, cxl, cyh, cyl)
    p2h, p2l = _lift_dd(pxh, pxl, pyh, pyl)

    # cy*p2 - c2*py
    t1h, t1l = _dd_mul(cyh, cyl, p2h, p2l)
    t2h, t2l = _dd_mul(c2h, c2l, pyh, pyl)
    m1h, m1l = _dd_sub(t1h, t1l, t2h, t2l)
    # cx*p2 - c2*px
    t1h, t1l = _dd_mul(cxh, cxl, p2h, p2l)
    t2h, t2l = _dd_mul(c2h, c2l, pxh, pxl)
    m2h, m2l = _dd_sub(t1h, t1l, t2h, t2l)
    # cx*py - cy*px
    t1h, t1l = _dd_mul(cxh, cxl, pyh, pyl)
    t2h, t2l = _dd_mul(cyh, cyl, pxh, pxl)
    m3h, m3l = _dd_sub(t1h, t1l, t2h, t2l)

    s1h, s1l = _dd_mul(bxh, bxl, m1h, m1l)
    s2h, s2l = _dd_mul(byh, byl, m2h, m2l)
    s3h, s3l = _dd_mul(b2h, b2l, m3h, m3l)
    dh, dl = _dd_sub(s1h, s1l, s2h, s2l)
    dh, dl = _dd_add(dh, dl, s3h, s3l)
    return -(dh + dl)


# --- predicates ------------------------------------------------------------


@njit(cache=True, error_model="numpy")
def orient2d_kernel(ax, ay, bx, by, cx, cy):
    """Twice the signed area of (a, b, c); exactly 0.0 when judged collinear.

    The points are put in lexicographic order first (tracking the sign of
    the permutation), so every ordering of a triple sees the same
    determinant and the same collinearity verdict.
    """
    sign = 1.0
    if bx < ax or (bx == ax and by < ay):
        ax, ay, bx, by = bx, by, ax, ay
        sign = -sign
    if cx < bx or (cx == bx and cy < by):
        bx, by, cx, cy = cx, cy, bx, by
        sign = -sign
        if bx < ax or (bx == ax and by < ay):
            ax, ay, bx, by = bx, by, ax, ay
            sign = -sign
    left = (bx - ax) * (cy - ay)
    right = (by - ay) * (cx - ax)
    det = left - right
    bound = REL_EPS * (abs(left) + abs(right))
    if abs(det) > bound:
        return sign * det
    det = _orient2d_dd(ax, ay, bx, by, cx, cy)
    if abs(det) > bound:
        return sign * det
    return 0.0


@njit(cache=True, error_model="numpy")
def incircle_kernel(ax, ay, bx, by, cx, cy, px, py):
    """Positive when p is inside the circle through CCW (a, b, c), 0.0 on it."""
    adx = ax - px
    ady = ay - py
    bdx = bx - px
    bdy = by - py
    cdx = cx - px
    cdy = cy - py

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady
    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    bound = REL_EPS * permanent
    if abs(det) > bound:
        return det
    det = _incircle_dd(ax, ay, bx, by, cx, cy, px, py)
    if abs(det) > bound:
        return det
    return 0.0


@njit(cache=True, error_model="numpy")
def circumcircle_kernel(ax, ay, bx, by, cx, cy):
    """Return (center_x, center_y, radius_sq); radius_sq is inf if collinear.

    The vertices are put in lexicographic order first so that every
    permutation of the same triple gives bit-identical output.
    """
    if bx < ax or (bx == ax and by < ay):
        ax, ay, bx, by = bx, by, ax, ay
    if cx < bx or (cx == bx and cy < by):
        bx, by, cx, cy = cx, cy, bx, by
        if bx < ax or (bx == ax and by < ay):
            ax, ay, bx, by = bx, by, ax, ay

    d = orient2d_kernel(ax, ay, bx, by, cx, cy)
    if d == 0.0:
        return np.nan, np.nan, np.inf
    d *= 2.0
    ux = bx - ax
    uy = by - ay
    vx = cx - ax
    vy = cy - ay
    u2 = ux * ux + uy * uy
    v2 = vx * vx + vy * vy
    ox = (vy * u2 - uy * v2) / d
    oy = (ux * v2 - vx * u2) / d
    return ax + ox, ay + oy, ox * ox + oy * oy


@njit(cache=True, error_model="numpy")
def dist_sq_kernel(ax, ay, bx, by):
    dx = ax - bx
    dy = ay - by
    return dx * dx + dy * dy


# --- point-level API -------------------------------------------------------


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    try:
        x, y = p
    except (TypeError, ValueError):
        raise InvalidInput(f"expected an (x, y) pair, got {p!r}") from None
    return Point(x, y)


def as_coords(points) -> np.ndarray:
    """Convert a point sequence to a C-contiguous ``(n, 2)`` float64 array."""
    arr = np.ascontiguousarray(points, dtype=np.float64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInput(f"expected an (n, 2) array of points, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr).all(axis=1))[0])
        raise InvalidInput(f"point {bad} has a non-finite coordinate")
    return arr


def _sign(v: float) -> int:
    return (v > 0.0) - (v < 0.0)


def orientation(a, b, c) -> Orientation:
    """Orientation of the turn a -> b -> c."""
    a, b, c = as_point(a), as_point(b), as_point(c)
    return Orientation(_sign(orient2d_kernel(a.x, a.y, b.x, b.y, c.x, c.y)))


def circumcircle(a, b, c) -> Circumcircle:
    a, b, c = as_point(a), as_point(b), as_point(c)
    x, y, r2 = circumcircle_kernel(a.x, a.y, b.x, b.y, c.x, c.y)
    if not math.isfinite(r2):
        raise CollinearInput(f"{tuple(a)}, {tuple(b)}, {tuple(c)} are collinear")
    return Circumcircle(Point(x, y), float(r2))


def in_circumcircle(a, b, c, p) -> CirclePosition:
    """Classify ``p`` against the circle through ``a``, ``b``, ``c``.

    A clockwise triple is reordered before testing, so the result does not
    depend on the orientation of the input.
    """
    a, b, c, p = as_point(a), as_point(b), as_point(c), as_point(p)
    o = orient2d_kernel(a.x, a.y, b.x, b.y, c.x, c.y)
    if o == 0.0:
        raise CollinearInput(f"{tuple(a)}, {tuple(b)}, {tuple(c)} are collinear")
    if o < 0.0:
        b, c = c, b
    det = incircle_kernel(a.x, a.y, b.x, b.y, c.x, c.y, p.x, p.y)
    return CirclePosition(_sign(det))


def dist_sq(a, b) -> float:
    a, b = as_point(a), as_point(b)
    return float(dist_sq_kernel(a.x, a.y, b.x, b.y))
