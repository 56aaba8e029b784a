"""Seed triangle selection and the radial sweep order."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import AllCollinear, DuplicatePoints, TooFewPoints
from .geometry import (
    Circumcircle,
    Point,
    as_coords,
    as_point,
    circumcircle_kernel,
    orient2d_kernel,
)

# Slack on the early-exit test of the partner scan.  A candidate whose
# distance from the seed exceeds the best diameter cannot win, but the
# computed radius carries rounding error, so stop only when clearly past.
_EARLY_EXIT_SLACK = 1e-9


@dataclass(frozen=True)
class SeedTriangle:
    """Counterclockwise seed triangle ``(i0, ij, ik)`` and its circumcircle."""

    i0: int
    ij: int
    ik: int
    circumcenter: Point
    radius_sq: float

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.i0, self.ij, self.ik)


@dataclass(frozen=True)
class SweepOrder:
    """A permutation of point indices and the per-point sort keys.

    ``keys[i]`` is the squared distance of point ``i`` from the sort origin,
    so ``keys[order]`` is nondecreasing (after the seed prefix, when the
    order came from :func:`build_seed`).
    """

    order: np.ndarray
    keys: np.ndarray

    def __len__(self) -> int:
        return len(self.order)


def select_seed(points) -> int:
    """Index of the point nearest the bounding-box center (lowest index on ties)."""
    coords = as_coords(points)
    if len(coords) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(coords)}")
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    cx = (lo[0] + hi[0]) / 2.0
    cy = (lo[1] + hi[1]) / 2.0
    dx = coords[:, 0] - cx
    dy = coords[:, 1] - cy
    return int(np.argmin(dx * dx + dy * dy))


def radial_sort(points, origin) -> SweepOrder:
    coords = as_coords(points)
    o = as_point(origin)
    dx = coords[:, 0] - o.x
    dy = coords[:, 1] - o.y
    keys = dx * dx + dy * dy
    return SweepOrder(np.argsort(keys, kind="stable"), keys)


@njit(cache=True, error_model="numpy")
def _partner_scan(coords, order, keys, i0, ij):
    ax, ay = coords[i0, 0], coords[i0, 1]
    bx, by = coords[ij, 0], coords[ij, 1]
    best = -1
    best_x = np.nan
    best_y = np.nan
    best_r2 = np.inf
    for pos in range(order.shape[0]):
        k = order[pos]
        if k == i0 or k == ij:
            continue
        # keys are squared distances from x0; the diameter squared is 4 r^2
        if keys[k] > 4.0 * best_r2 * (1.0 + _EARLY_EXIT_SLACK):
            break
        x, y, r2 = circumcircle_kernel(ax, ay, bx, by, coords[k, 0], coords[k, 1])
        if r2 < best_r2:
            best = k
            best_x = x
            best_y = y
            best_r2 = r2
    return best, best_x, best_y, best_r2


def find_min_circumcircle_partner(points, sorted_order: SweepOrder, i0: int, ij: int):
    """Find the point forming the smallest circumcircle with ``i0`` and ``ij``.

    ``sorted_order`` must be the radial order about point ``i0``.  Returns
    ``(ik, Circumcircle)``.
    """
    coords = as_coords(points)
    ik, x, y, r2 = _partner_scan(
        coords, np.asarray(sorted_order.order, dtype=np.int64), sorted_order.keys, i0, ij
    )
    if ik < 0:
        raise AllCollinear("all points are collinear")
    return int(ik), Circumcircle(Point(x, y), float(r2))


@njit(cache=True, error_model="numpy")
def _find_duplicate(coords, order, keys):
    # equal coordinates imply equal keys, so only runs of equal keys need a
    # pairwise comparison
    n = order.shape[0]
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and keys[order[stop]] == keys[order[start]]:
            stop += 1
        for p in range(start, stop):
            a = order[p]
            for q in range(p + 1, stop):
                b = order[q]
                if coords[a, 0] == coords[b, 0] and coords[a, 1] == coords[b, 1]:
                    return min(a, b), max(a, b)
        start = stop
    return -1, -1


def build_seed(points) -> tuple[SeedTriangle, SweepOrder]:
    """Choose the seed triangle and order every point for the sweep.

    The returned order starts with the three seed vertices; the rest follow
    by squared distance from the seed circumcenter.
    """
    coords = as_coords(points)
    i0 = select_seed(coords)
    about_seed = radial_sort(coords, coords[i0])
    order0 = about_seed.order
    # i0 has key 0, so a duplicate of it is the only other key-0 point
    first, second = int(order0[0]), int(order0[1])
    if about_seed.keys[second] == 0.0:
        raise DuplicatePoints(
            f"points {min(first, second)} and {max(first, second)} coincide",
            (min(first, second), max(first, second)),
        )
    ij = second if first == i0 else first

    ik, circle = find_min_circumcircle_partner(coords, about_seed, i0, ij)
    o = orient2d_kernel(
        coords[i0, 0], coords[i0, 1], coords[ij, 0], coords[ij, 1], coords[ik, 0], coords[ik, 1]
    )
    if o < 0.0:
        ij, ik = ik, ij

    about_center = radial_sort(coords, circle.center)
    a, b = _find_duplicate(coords, about_center.order, about_center.keys)
    if a >= 0:
        raise DuplicatePoints(f"points {a} and {b} coincide", (int(a), int(b)))

    rest = about_center.order
    rest = rest[(rest != i0) & (rest != ij) & (rest != ik)]
    order = np.concatenate((np.array([i0, ij, ik], dtype=np.int64), rest.astype(np.int64)))
    seed = SeedTriangle(i0, int(ij), int(ik), circle.center, circle.radius_sq)
    return seed, SweepOrder(order, about_center.keys)
