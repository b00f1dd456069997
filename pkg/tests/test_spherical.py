from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from starkit.hulls import PointSet
from starkit.starshape import SphericalPointError, l_shape, sees, spherical_point

from .strategies import point_lists, points

H = F(1, 2)


def test_two_point_slide():
    S = PointSet.of([(0, 0), (2, 0)])
    r = spherical_point((0, 0), (2, 0), S)
    assert r.z == (2, 0) and r.ball_center == (F(3, 2), 0) and r.ball_radius_sq == F(1, 4)
    assert r.halfspace.normal[0] > 0 and r.halfspace.offset / r.halfspace.normal[0] == 2
    assert not r.halfspace.contains((0, 0)) and r.verify((0, 0), S)


def test_l_shape_slide_near_reflex_corner():
    L = l_shape()
    x, y = (F(3, 2), H), (H, F(7, 4))
    r = spherical_point(x, y, L)
    assert r.verify(x, L)
    assert r.z[0] == 1 and r.z[1] > 1


def test_segment_inside_is_rejected():
    L = l_shape()
    with pytest.raises(SphericalPointError):
        spherical_point((H, H), (F(3, 2), H), L)
    # touching the reflex corner keeps the segment inside the closed polygon
    assert sees((F(3, 2), H), (H, F(3, 2)), L)
    with pytest.raises(SphericalPointError):
        spherical_point((F(3, 2), H), (H, F(3, 2)), L)


@given(point_lists(2, 1, 7), points(2, 7), st.integers(0, 6))
def test_point_set_slides_verify(pts, x, k):
    S = PointSet.of(pts)
    y = S[k % len(S)]
    assume(tuple(x) != y)
    r = spherical_point(x, y, S)
    assert r.verify(x, S) and r.z in S.points
    assert r.halfspace.value(x) < 0


@given(point_lists(3, 1, 6), points(3, 7))
def test_spatial_slides_verify(pts, x):
    S = PointSet.of(pts)
    assume(tuple(x) != S[0])
    assert spherical_point(x, S[0], S).verify(x, S)


def test_y_outside_point_set_is_rejected():
    with pytest.raises(SphericalPointError):
        spherical_point((0, 0), (1, 1), PointSet.of([(0, 0)]))
