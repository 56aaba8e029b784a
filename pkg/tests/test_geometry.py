import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shull.errors import CollinearInput, InvalidInput
from shull.geometry import (
    CirclePosition,
    Orientation,
    Point,
    circumcircle,
    dist_sq,
    in_circumcircle,
    incircle_kernel,
    orient2d_kernel,
    orientation,
)

coord = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
pt = st.tuples(coord, coord)
# squared differences below ~1e-323 underflow to zero, so the zero-iff-equal
# property is only meaningful away from the subnormal range
coarse = st.integers(-10**6, 10**6).map(lambda k: k / 1024)
coarse_pt = st.tuples(coarse, coarse)


def test_point_rejects_non_finite():
    with pytest.raises(InvalidInput):
        Point(float("nan"), 0.0)
    with pytest.raises(InvalidInput):
        Point(0.0, float("inf"))
    assert Point(1, 2) == (1.0, 2.0)


@pytest.mark.parametrize(
    "a, b, c, expected",
    [
        ((0, 0), (1, 0), (0, 1), Orientation.COUNTERCLOCKWISE),
        ((0, 0), (1, 1), (2, 2), Orientation.COLLINEAR),
        ((0, 0), (0, 1), (1, 0), Orientation.CLOCKWISE),
    ],
)
def test_orientation_examples(a, b, c, expected):
    assert orientation(a, b, c) is expected


def test_circumcircle_examples():
    c = circumcircle((0, 0), (2, 0), (0, 2))
    assert c.center == (1.0, 1.0)
    assert c.radius_sq == 2.0

    c = circumcircle((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
    assert c.center.x == pytest.approx(0.5, rel=1e-12)
    assert c.center.y == pytest.approx(math.sqrt(3) / 6, rel=1e-12)
    assert c.radius_sq == pytest.approx(1 / 3, rel=1e-12)

    with pytest.raises(CollinearInput):
        circumcircle((0, 0), (1, 1), (2, 2))


@pytest.mark.parametrize(
    "p, expected",
    [((1, 1), CirclePosition.INSIDE), ((3, 3), CirclePosition.OUTSIDE),
     ((2, 2), CirclePosition.ON_CIRCLE)],
)
def test_in_circumcircle_examples(p, expected):
    assert in_circumcircle((0, 0), (2, 0), (0, 2), p) is expected


def test_in_circumcircle_normalizes_orientation():
    assert in_circumcircle((0, 0), (0, 2), (2, 0), (1, 1)) is CirclePosition.INSIDE
    with pytest.raises(CollinearInput):
        in_circumcircle((0, 0), (1, 1), (2, 2), (5, 0))


def test_dist_sq_examples():
    assert dist_sq((0, 0), (3, 4)) == 25
    assert dist_sq((1, 1), (1, 1)) == 0
    assert dist_sq((-1, 0), (1, 0)) == 4


@given(pt, pt, pt)
def test_orientation_antisymmetric_and_cyclic(a, b, c):
    o = orientation(a, b, c)
    assert orientation(a, c, b) == -o
    assert orientation(b, c, a) == o
    assert orientation(c, a, b) == o


@given(coarse_pt, coarse_pt)
def test_dist_sq_symmetric(a, b):
    assert dist_sq(a, b) == dist_sq(b, a)
    assert (dist_sq(a, b) == 0) == (a == b)


def test_circumcircle_equidistant_random(rng):
    done = 0
    while done < 1000:
        a, b, c = rng.uniform(-10, 10, (3, 2))
        if orientation(a, b, c) is Orientation.COLLINEAR:
            continue
        cc = circumcircle(a, b, c)
        for p in (a, b, c):
            assert dist_sq(p, cc.center) == pytest.approx(cc.radius_sq, rel=1e-9)
        done += 1


@given(coarse_pt, coarse_pt, coarse_pt)
def test_circumcircle_permutation_stable(a, b, c):
    if orientation(a, b, c) is Orientation.COLLINEAR:
        return
    ref = circumcircle(a, b, c)
    for perm in ((a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
        assert circumcircle(*perm) == ref


def test_in_circumcircle_matches_distance(rng):
    checked = 0
    for _ in range(3000):
        a, b, c, p = rng.uniform(-1, 1, (4, 2))
        if orientation(a, b, c) is Orientation.COLLINEAR:
            continue
        cc = circumcircle(a, b, c)
        diff = dist_sq(p, cc.center) - cc.radius_sq
        if abs(diff) > 1e-7 * cc.radius_sq:
            want = CirclePosition.INSIDE if diff < 0 else CirclePosition.OUTSIDE
            assert in_circumcircle(a, b, c, p) is want
            checked += 1
    assert checked > 2000


@pytest.mark.parametrize("offset", [0.0, 1.0, 1e3, 1e6, -1e6])
def test_in_circumcircle_translation_invariant(rng, offset):
    for _ in range(300):
        a, b, c, p = rng.uniform(-1, 1, (4, 2))
        if orientation(a, b, c) is Orientation.COLLINEAR:
            continue
        base = in_circumcircle(a, b, c, p)
        shifted = [tuple(np.asarray(q) + offset) for q in (a, b, c, p)]
        cc = circumcircle(a, b, c)
        # far from the circle the answer must survive the translation
        if abs(dist_sq(p, cc.center) - cc.radius_sq) > 1e-6 * cc.radius_sq:
            assert in_circumcircle(*shifted) is base


def test_exact_cocircular_after_translation():
    # integer square: cocircular exactly, also after a large shift
    for off in (0.0, 1e6):
        sq = [(off, off), (off + 2, off), (off + 2, off + 2), (off, off + 2)]
        assert in_circumcircle(*sq[:3], sq[3]) is CirclePosition.ON_CIRCLE


def test_collinearity_threshold_is_relative():
    # relative determinant ~3e-16: below the 1e-12 threshold
    assert orientation((0.1, 0.1), (0.3, 0.3), (0.5, 0.5 + 2 ** -52)) is Orientation.COLLINEAR
    # relative determinant ~1e-10: decided
    assert orientation((0.0, 0.0), (1.0, 1.0), (2.0, 2.0 + 1e-10)) is Orientation.COUNTERCLOCKWISE
    # same configurations scaled by 1e9 keep their verdicts
    assert orientation((0.0, 0.0), (1e9, 1e9), (2e9, 2e9 + 1e-1)) is Orientation.COUNTERCLOCKWISE


def test_double_double_orientation_is_accurate(rng):
    from fractions import Fraction

    from shull.geometry import _orient2d_dd

    for _ in range(200):
        a = rng.uniform(1e6, 1e6 + 1, 2)
        d = rng.uniform(-1, 1, 2)
        b = a + d
        c = a + 2 * d + rng.uniform(-1e-9, 1e-9, 2)
        exact = (Fraction(b[0]) - Fraction(a[0])) * (Fraction(c[1]) - Fraction(a[1])) \
            - (Fraction(b[1]) - Fraction(a[1])) * (Fraction(c[0]) - Fraction(a[0]))
        got = _orient2d_dd(*a, *b, *c)
        assert abs(Fraction(got) - exact) <= abs(exact) * Fraction(1, 10**12) + Fraction(1, 10**30)


@given(coarse_pt, coarse_pt, coarse_pt)
def test_orientation_agrees_with_circumcircle(a, b, c):
    collinear = orientation(a, b, c) is Orientation.COLLINEAR
    if collinear:
        with pytest.raises(CollinearInput):
            circumcircle(a, b, c)
    else:
        assert math.isfinite(circumcircle(a, b, c).radius_sq)


def test_incircle_kernel_sign_convention():
    assert incircle_kernel(0, 0, 2, 0, 0, 2, 1, 1) > 0
    assert incircle_kernel(0, 0, 2, 0, 0, 2, 3, 3) < 0
    assert incircle_kernel(0, 0, 2, 0, 0, 2, 2, 2) == 0.0
