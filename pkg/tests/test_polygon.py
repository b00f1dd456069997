import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from starkit.numerics.rational import lerp
from starkit.oracles import conv_oracle, halfplane_intersection_area
from starkit.starshape import (
    NOT_STAR,
    STAR,
    EmptyKernel,
    Kernel,
    Polygon,
    PolygonError,
    comb_polygon,
    hare_kenelly_truncation,
    krasnoselskii_triples,
    l_shape,
    polygon_kernel,
    sees,
    star_shaped_polygon,
)
from starkit.starshape.polygon import polygon_area

UNIT = Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))
H = F(1, 2)


def _boundary_samples(P: Polygon, per_edge: int = 4):
    return [lerp(a, b, F(k, per_edge)) for a, b in P.edges() for k in range(per_edge)]


def _sees_everything(p, P: Polygon) -> bool:
    return all(sees(p, z, P) for z in _boundary_samples(P))


def _grid(P: Polygon, res: int):
    (x0, y0), (x1, y1) = P.bounding_box()
    pts = [(x0 + (x1 - x0) * F(i, res), y0 + (y1 - y0) * F(j, res)) for i in range(res + 1) for j in range(res + 1)]
    return [p for p in pts if P.contains(p)]


def test_clockwise_input_is_rejected():
    with pytest.raises(PolygonError):
        Polygon(((0, 0), (0, 1), (1, 1), (1, 0)))


def test_self_intersecting_input_is_rejected():
    with pytest.raises(PolygonError):
        Polygon(((0, 0), (1, 1), (1, 0), (0, 1)))


def test_convex_polygon_sees_itself():
    assert sees((F(1, 4), F(1, 4)), (F(3, 4), F(3, 4)), UNIT)


def test_l_shape_visibility():
    L = l_shape()
    assert sees((H, H), (2, 1), L)
    # the segment from (3/2, 1/2) to (1/2, 7/4) crosses x = 1 at y = 9/8 > 1
    assert not sees((F(3, 2), H), (H, F(7, 4)), L)
    # through the reflex corner (1, 1) the segment stays in the closed polygon
    assert sees((F(3, 2), H), (H, F(3, 2)), L)


def test_convex_kernel_is_the_polygon():
    k = polygon_kernel(UNIT)
    assert isinstance(k, Kernel) and k.area == 1
    assert set(k.vertices) == set(UNIT.vertices)


def test_l_shape_kernel_is_unit_square():
    k = polygon_kernel(l_shape())
    assert isinstance(k, Kernel)
    assert set(k.vertices) == {(0, 0), (1, 0), (1, 1), (0, 1)} and k.area == 1


def test_l_shape_kernel_against_grid_visibility():
    L = l_shape()
    k = polygon_kernel(L)
    for p in _grid(L, 8):
        assert conv_oracle(p, list(k.vertices)) == _sees_everything(p, L)


def test_comb_has_empty_kernel():
    comb = comb_polygon(3)
    k = polygon_kernel(comb)
    assert isinstance(k, EmptyKernel)
    assert len(k.certificate.halfspaces) == 3 and k.certificate.verify_family()
    assert not any(_sees_everything(p, comb) for p in _grid(comb, 10))


def test_star_verdicts():
    assert star_shaped_polygon(UNIT).kind == STAR
    v = star_shaped_polygon(l_shape())
    assert v.kind == STAR and all(0 <= c <= 1 for c in v.witness)
    v = star_shaped_polygon(comb_polygon(3))
    assert v.kind == NOT_STAR and v.certificate.verify_family()


def test_triples_on_l_shape_all_have_viewers():
    rep = krasnoselskii_triples(l_shape(), budget=300, grid_res=16)
    assert rep.all_have_viewer and rep.verdict == "agree"


def test_comb_has_viewerless_triple_at_resolution_64():
    comb = comb_polygon(3)
    rep = krasnoselskii_triples(comb, grid_res=64)
    assert not rep.all_have_viewer and rep.verdict == "agree"
    a, b, c = rep.viewerless_triple
    assert not any(sees(p, a, comb) and sees(p, b, comb) and sees(p, c, comb) for p in _grid(comb, 16))


def test_hare_kenelly_first_truncation():
    assert hare_kenelly_truncation(1, 4).vertices == ((1, 0), (4, 0), (4, 1), (0, 1))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_hare_kenelly_matches_defining_inequalities(k):
    P = hare_kenelly_truncation(k, 8)
    # strip j (1 <= j <= k) is j-1 <= y <= j with x + y >= j, x <= 8
    def member(p):
        x, y = p
        if not (0 <= y <= k and x <= 8 and x >= 0):
            return False
        return any(j - 1 <= y <= j and x + y >= j for j in range(1, k + 1))

    for i in range(0, 33):
        for j in range(0, 4 * k + 1):
            p = (F(i, 4), F(j, 4))
            assert P.contains(p) == member(p), p


def test_hare_kenelly_areas_decrease():
    areas = [polygon_kernel(hare_kenelly_truncation(k, 8)).area for k in range(1, 6)]
    assert all(a > b > 0 for a, b in zip(areas, areas[1:]))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_hare_kenelly_kernel_area_matches_halfplane_oracle(k):
    P = hare_kenelly_truncation(k, 8)
    halfplanes = [(h.normal, h.offset) for h in P.edge_halfspaces()]
    assert polygon_kernel(P).area == halfplane_intersection_area(halfplanes)


def test_hare_kenelly_triples_have_viewers():
    assert krasnoselskii_triples(hare_kenelly_truncation(3, 4), budget=200, grid_res=16).all_have_viewer


def test_area_of_square():
    assert polygon_area(UNIT.vertices) == 1


@st.composite
def radial_polygons(draw):
    """Lattice points sorted by angle around the origin: star-shaped from 0."""
    pts = draw(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=9, unique=True))
    pts = [p for p in pts if p != (0, 0)]
    by_angle = {}
    for p in pts:
        by_angle.setdefault(math.atan2(p[1], p[0]), p)
    angles = sorted(by_angle)
    assume(len(angles) >= 3)
    gaps = [b - a for a, b in zip(angles, angles[1:])] + [angles[0] + 2 * math.pi - angles[-1]]
    assume(max(gaps) < math.pi - 1e-9)
    try:
        return Polygon(tuple(by_angle[a] for a in angles))
    except PolygonError:
        assume(False)


@given(radial_polygons())
def test_radial_polygons_are_star_shaped_from_origin(P):
    k = polygon_kernel(P)
    assert isinstance(k, Kernel)
    assert all(h.contains((0, 0)) for h in P.edge_halfspaces())
    assert P.contains(k.point) and _sees_everything(k.point, P)


@given(radial_polygons())
def test_kernel_area_matches_oracle(P):
    halfplanes = [(h.normal, h.offset) for h in P.edge_halfspaces()]
    assert polygon_kernel(P).area == halfplane_intersection_area(halfplanes)
