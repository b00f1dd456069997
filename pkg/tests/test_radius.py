from fractions import Fraction as F

from hypothesis import given

from starkit.hulls import PointSet
from starkit.oracles import brute_force_min_ball
from starkit.starshape import helly_radius_sq, min_enclosing_ball, radius_at_most
from starkit.starshape.radius import BOTH, DIRECT, HELLY

from .strategies import point_lists

TRIPLE = PointSet.of([(0, 0), (2, 0), (1, 1)])


def test_singleton_ball():
    b = min_enclosing_ball(PointSet.of([(0, 0)]))
    assert b.center == (0, 0) and b.radius_sq == 0


def test_diameter_pair():
    b = min_enclosing_ball(PointSet.of([(0, 0), (2, 0)]))
    assert b.center == (1, 0) and b.radius_sq == 1


def test_three_points_on_a_half_circle():
    b = min_enclosing_ball(TRIPLE)
    assert b.center == (1, 0) and b.radius_sq == 1
    assert all(sum((p - c) ** 2 for p, c in zip(q, b.center)) == 1 for q in TRIPLE)


def test_radius_decisions():
    for mode in (DIRECT, HELLY, BOTH):
        assert radius_at_most(TRIPLE, 1, mode)
        assert not radius_at_most(TRIPLE, F(98, 100), mode)
    assert radius_at_most(PointSet.of([(3, 3)]), 0)


@given(point_lists(2, 1, 7))
def test_ball_matches_brute_force_planar(pts):
    S = PointSet.of(pts)
    b = min_enclosing_ball(S)
    center, r_sq = brute_force_min_ball(S.points)
    assert b.radius_sq == r_sq and b.center == center
    assert all(b.contains(p) for p in S)


@given(point_lists(3, 1, 6))
def test_ball_matches_brute_force_spatial(pts):
    S = PointSet.of(pts)
    assert min_enclosing_ball(S).radius_sq == brute_force_min_ball(S.points)[1]


@given(point_lists(2, 1, 8))
def test_helly_subsets_give_the_same_radius(pts):
    S = PointSet.of(pts)
    r = min_enclosing_ball(S).radius_sq
    assert helly_radius_sq(S) == r
    assert radius_at_most(S, r, BOTH) and (r == 0 or not radius_at_most(S, r - F(1, 1000), BOTH))
