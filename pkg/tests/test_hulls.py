from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from starkit.hulls import (
    ConvexComboWitness,
    Degenerate,
    EmptySet,
    FullDim,
    HullError,
    Interior,
    Member,
    NotInterior,
    NotMember,
    PointSet,
    caratheodory_reduce,
    conv_membership,
    full_dim_certificate,
    interior_membership,
    pos_hull_membership,
)
from starkit.oracles import conv_oracle, interior_oracle

from .strategies import point_lists, points

TRI = PointSet.of([(0, 0), (1, 0), (0, 1)])
SQUARE = PointSet.of([(0, 0), (1, 0), (0, 1), (1, 1)])
CROSS = PointSet.of([(1, 0), (-1, 0), (0, 1), (0, -1)])


def test_singleton_member():
    res = conv_membership((3, 4), PointSet.of([(3, 4)]))
    assert isinstance(res, Member) and res.witness.lambdas == (1,)


def test_triangle_member_weights():
    res = conv_membership((F(1, 4), F(1, 4)), TRI)
    assert isinstance(res, Member)
    w = dict(zip(res.witness.indices, res.witness.lambdas))
    assert w == {0: F(1, 2), 1: F(1, 4), 2: F(1, 4)}


def test_triangle_outside_gets_separating_halfspace():
    res = conv_membership((2, 0), TRI)
    assert isinstance(res, NotMember)
    h = res.halfspace
    assert all(h.contains(p) for p in TRI) and not h.contains((2, 0))


def test_empty_set_has_its_own_result():
    assert isinstance(conv_membership((0, 0), PointSet(2, ())), EmptySet)


def test_dimension_mismatch():
    with pytest.raises(HullError):
        conv_membership((0, 0, 0), TRI)


def test_reduce_cross_polytope_witness():
    w = ConvexComboWitness((0, 1, 2, 3), (F(1, 4),) * 4)
    red = caratheodory_reduce((0, 0), w, CROSS)
    assert len(red.indices) <= 3 and red.verify((0, 0), CROSS, 3)


def test_reduce_leaves_small_witness_alone():
    w = ConvexComboWitness((0, 1), (F(1, 2), F(1, 2)))
    assert caratheodory_reduce((F(1, 2), 0), w, TRI) == w


def test_reduce_square_centre():
    w = ConvexComboWitness((0, 1, 2, 3), (F(1, 4),) * 4)
    red = caratheodory_reduce((F(1, 2), F(1, 2)), w, SQUARE)
    assert len(red.indices) <= 3 and red.verify((F(1, 2), F(1, 2)), SQUARE, 3)


def test_reduce_rejects_invalid_witness():
    with pytest.raises(HullError):
        caratheodory_reduce((0, 0), ConvexComboWitness((0,), (F(1),)), CROSS)


@given(point_lists(2, 1, 9), points(2))
def test_membership_agrees_with_oracle(pts, q):
    S = PointSet.of(pts)
    res = conv_membership(q, S)
    assert isinstance(res, Member) == conv_oracle(q, S.points)
    if isinstance(res, Member):
        assert res.witness.verify(q, S, 3)
    else:
        assert all(res.halfspace.contains(p) for p in S) and not res.halfspace.contains(q)


@given(point_lists(3, 1, 8), st.lists(st.integers(0, 5), min_size=8, max_size=8))
def test_every_hull_point_has_small_witness(pts, raw):
    S = PointSet.of(pts)
    weights = [F(r) for r in raw[: len(pts)]]
    assume(sum(weights) > 0)
    lam = [w / sum(weights) for w in weights]
    q = tuple(sum(l * p[k] for l, p in zip(lam, S)) for k in range(3))
    res = conv_membership(q, S)
    assert isinstance(res, Member) and res.witness.verify(q, S, 4)


# -- Steinitz ----------------------------------------------------------------


def test_cross_polytope_origin_needs_all_four_points():
    res = interior_membership((0, 0), CROSS)
    assert isinstance(res, Interior)
    assert sorted(res.witness.indices) == [0, 1, 2, 3]
    assert res.witness.verify((0, 0), CROSS)


@pytest.mark.parametrize("drop", range(4))
def test_dropping_a_cross_point_loses_interiority(drop):
    S = PointSet.of([p for i, p in enumerate(CROSS) if i != drop])
    res = interior_membership((0, 0), S)
    assert isinstance(res, NotInterior)
    assert all(res.halfspace.contains(p) for p in S) and not res.halfspace.strictly_contains((0, 0))


def test_far_point_is_not_interior():
    res = interior_membership((5, 5), SQUARE)
    assert isinstance(res, NotInterior)
    assert all(res.halfspace.contains(p) for p in SQUARE) and not res.halfspace.contains((5, 5))


def test_too_few_points_is_degenerate():
    res = interior_membership((0, 0), PointSet.of([(1, 0), (-1, 0)]))
    assert isinstance(res, NotInterior) and res.reason == "degenerate"


@given(point_lists(2, 3, 8), points(2, 3))
def test_interior_agrees_with_oracle(pts, q):
    S = PointSet.of(pts)
    res = interior_membership(q, S)
    assert isinstance(res, Interior) == interior_oracle(q, S.points)
    if isinstance(res, Interior):
        assert res.witness.verify(q, S) and len(res.witness.indices) <= 4


# -- full dimension ------------------------------------------------------------


def test_cross_polytope_is_full_dimensional():
    res = full_dim_certificate(list(CROSS))
    assert isinstance(res, FullDim)
    assert all(c.verify(list(CROSS)) for c in res.certs)


def test_collinear_on_x_axis():
    res = full_dim_certificate([(0, 0), (1, 0), (2, 0), (3, 0)])
    assert isinstance(res, Degenerate)
    u = res.normal
    assert u[0] == 0 and u[1] != 0


def test_points_on_diagonal():
    res = full_dim_certificate([(0, 0), (1, 1), (2, 2), (5, 5)])
    assert isinstance(res, Degenerate)
    assert res.normal[0] == -res.normal[1] != 0


# -- positive hull -------------------------------------------------------------


def test_zero_is_in_every_cone():
    res = pos_hull_membership((0, 0), PointSet.of([(1, 0)]))
    assert isinstance(res, Member) and res.witness.indices == ()


def test_basis_combination():
    res = pos_hull_membership((2, 2), PointSet.of([(1, 0), (0, 1)]))
    assert isinstance(res, Member) and res.witness.lambdas == (2, 2)


def test_outside_cone():
    S = PointSet.of([(1, 0), (0, 1)])
    res = pos_hull_membership((-1, 0), S)
    assert isinstance(res, NotMember)
    h = res.halfspace
    assert h.offset == 0 and all(h.contains(p) for p in S) and not h.contains((-1, 0))


def test_empty_cone_contains_only_zero():
    empty = PointSet(2, ())
    assert isinstance(pos_hull_membership((0, 0), empty), Member)
    assert isinstance(pos_hull_membership((1, 0), empty), NotMember)


@given(point_lists(3, 1, 6), points(3))
def test_conic_witness_uses_at_most_dim_vectors(pts, q):
    S = PointSet.of(pts)
    res = pos_hull_membership(q, S)
    if isinstance(res, Member):
        assert res.witness.verify(q, S, 3)
    else:
        assert all(res.halfspace.contains(p) for p in S) and not res.halfspace.contains(q)
