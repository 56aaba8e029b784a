import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shull.errors import AllCollinear, DuplicatePoints, TooFewPoints
from shull.geometry import Orientation, circumcircle, orientation
from shull.seeding import (
    build_seed,
    find_min_circumcircle_partner,
    radial_sort,
    select_seed,
)

from helpers import uniform

FOUR = [(0, 0), (1, 0), (0, 1), (10, 10)]


def exhaustive_partner(pts, i0, ij):
    best, best_r2 = -1, math.inf
    for k in range(len(pts)):
        if k in (i0, ij) or orientation(pts[i0], pts[ij], pts[k]) is Orientation.COLLINEAR:
            continue
        r2 = circumcircle(pts[i0], pts[ij], pts[k]).radius_sq
        if r2 < best_r2:
            best, best_r2 = k, r2
    return best, best_r2


# -- select_seed --

def test_select_seed_nearest_bbox_center():
    assert select_seed([(0, 0), (10, 0), (0, 10), (4, 4)]) == 3


def test_select_seed_ties_lowest_index():
    assert select_seed([(0, 0), (1, 0), (0, 1)]) == 0


def test_select_seed_too_few():
    with pytest.raises(TooFewPoints):
        select_seed([(0, 0), (1, 0)])


# -- radial_sort --

@pytest.mark.parametrize("pts, origin, expected", [
    ([(5, 0), (1, 0), (3, 0)], (0, 0), [1, 2, 0]),
    ([(1, 0), (0, 1)], (0, 0), [0, 1]),
    ([(0, 0)], (0, 0), [0]),
])
def test_radial_sort_examples(pts, origin, expected):
    assert radial_sort(pts, origin).order.tolist() == expected


def test_radial_sort_keys_nondecreasing(rng):
    pts = rng.random((500, 2))
    so = radial_sort(pts, (0.3, 0.6))
    assert np.all(np.diff(so.keys[so.order]) >= 0)
    assert sorted(so.order.tolist()) == list(range(500))


# -- find_min_circumcircle_partner --

def test_partner_example():
    ik, circle = find_min_circumcircle_partner(FOUR, radial_sort(FOUR, (0, 0)), 0, 1)
    assert ik == 2
    assert tuple(circle.center) == pytest.approx((0.5, 0.5))
    assert circle.radius_sq == pytest.approx(0.5)


def test_partner_all_collinear():
    pts = [(float(i), 0.0) for i in range(6)]
    with pytest.raises(AllCollinear):
        find_min_circumcircle_partner(pts, radial_sort(pts, pts[0]), 0, 1)


def test_partner_skips_collinear_candidates():
    pts = [(0, 0), (1, 0), (2, 0), (3, 0), (0.5, 5)]
    ik, _ = find_min_circumcircle_partner(pts, radial_sort(pts, pts[0]), 0, 1)
    assert ik == 4


def test_partner_early_exit_matches_exhaustive():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        pts = rng.random((50, 2))
        so = radial_sort(pts, pts[0])
        ij = int(so.order[1])
        ik, circle = find_min_circumcircle_partner(pts, so, 0, ij)
        want, want_r2 = exhaustive_partner(pts, 0, ij)
        assert ik == want
        assert circle.radius_sq == want_r2


@given(st.integers(0, 2**32 - 1), st.integers(4, 200))
def test_partner_early_exit_property(seed, n):
    pts = uniform(n, seed)
    i0 = select_seed(pts)
    so = radial_sort(pts, pts[i0])
    ij = int(so.order[1])
    ik, _ = find_min_circumcircle_partner(pts, so, i0, ij)
    assert ik == exhaustive_partner(pts, i0, ij)[0]


# -- build_seed --

def test_build_seed_four_points():
    seed, order = build_seed(FOUR)
    assert set(seed.indices) == {0, 1, 2}
    assert orientation(*(FOUR[i] for i in seed.indices)) is Orientation.COUNTERCLOCKWISE
    assert tuple(seed.circumcenter) == pytest.approx((0.5, 0.5))
    assert order.order.tolist()[:3] == list(seed.indices)
    assert order.order.tolist()[3] == 3


def test_build_seed_equilateral():
    pts = [(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)]
    seed, order = build_seed(pts)
    assert set(seed.indices) == {0, 1, 2}
    assert tuple(seed.circumcenter) == pytest.approx((0.5, math.sqrt(3) / 6))
    assert seed.radius_sq == pytest.approx(1 / 3)


def test_build_seed_collinear():
    pts = [(i, 2 * i + 1) for i in range(100)]
    with pytest.raises(AllCollinear):
        build_seed(pts)


def test_build_seed_duplicates_reported():
    pts = [(0, 0), (1, 0), (0, 1), (3, 3), (1, 0)]
    with pytest.raises(DuplicatePoints) as exc:
        build_seed(pts)
    assert exc.value.indices == (1, 4)


def test_build_seed_duplicate_of_seed_point():
    pts = [(0, 0), (2, 0), (0, 2), (1, 1), (1, 1)]
    with pytest.raises(DuplicatePoints) as exc:
        build_seed(pts)
    assert exc.value.indices == (3, 4)


@given(st.integers(0, 2**32 - 1), st.integers(3, 300))
def test_build_seed_properties(seed, n):
    pts = uniform(n, seed)
    s, order = build_seed(pts)
    assert len(set(s.indices)) == 3
    assert orientation(*(pts[i] for i in s.indices)) is Orientation.COUNTERCLOCKWISE
    assert sorted(order.order.tolist()) == list(range(n))
    assert order.order.tolist()[:3] == list(s.indices)
    tail = order.keys[order.order[3:]]
    assert np.all(np.diff(tail) >= 0)
    # nothing lies inside the seed circle: it is the smallest through x0 and xj
    assert tail.size == 0 or tail[0] >= s.radius_sq * (1 - 1e-9)


def test_build_seed_deterministic():
    pts = uniform(1000, 5)
    a, oa = build_seed(pts)
    b, ob = build_seed(pts.copy())
    assert a == b
    assert np.array_equal(oa.order, ob.order) and np.array_equal(oa.keys, ob.keys)
