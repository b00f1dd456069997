from fractions import Fraction as F

import pytest

from starkit.numerics import Polynomial
from starkit.starshape import (
    NOT_STAR,
    STAR,
    UNKNOWN,
    SmoothnessViolation,
    SmoothRegion,
    annulus,
    boundary_sample,
    disk,
    ray_crossings,
    smooth_star_check,
    supporting_halfspace,
)
from starkit.starshape.smooth import NotBoundaryPoint


def test_disk_ray_is_exact():
    (z,) = ray_crossings(disk(), (0, 0), (1, 0))
    assert z.exact and z.point == (1, 0)


def test_annulus_ray_meets_both_circles():
    zs = ray_crossings(annulus(), (0, 0), (0, 1))
    assert [z.point for z in zs] == [(0, 1), (0, 2)]


def test_random_rays_are_tightly_bracketed():
    R = disk()
    for z in boundary_sample(R, 20, seed=3):
        if z.exact:
            assert R.value(z.point) == 0
            continue
        lo, hi = z.bracket
        assert R.value(lo) * R.value(hi) < 0
        assert max(abs(a - b) for a, b in zip(lo, hi)) <= F(1, 2**30)


def test_disk_tangent_halfspace():
    s = supporting_halfspace(disk(), (1, 0))
    assert s.halfspace.normal == (-2, 0) and s.halfspace.offset == -2
    assert s.halfspace.contains((0, 0)) and not s.halfspace.contains((F(3, 2), 0))


def test_annulus_inner_tangent_excludes_hole():
    s = supporting_halfspace(annulus(), (1, 0))
    assert s.halfspace.normal == (6, 0) and s.halfspace.offset == 6
    assert not s.halfspace.contains((0, 0))


def test_off_boundary_point_is_rejected():
    with pytest.raises(NotBoundaryPoint):
        supporting_halfspace(disk(), (0, 0))


def test_vanishing_gradient_is_reported():
    x, y = Polynomial.variables(2)
    # the cusp y^2 = x^3 has a singular boundary point at the origin
    cusp = SmoothRegion(y**2 - x**3, ((-1, 1), (-1, 1)))
    with pytest.raises(SmoothnessViolation, match="0"):
        supporting_halfspace(cusp, (0, 0))


def test_disk_is_star_shaped():
    v = smooth_star_check(disk(), 16, seed=0)
    assert v.kind == STAR and disk().value(v.witness) > 0


def test_annulus_is_not_star_shaped():
    R = annulus()
    v = smooth_star_check(R, 32, seed=0)
    assert v.kind == NOT_STAR
    assert len(v.certificate.halfspaces) == 3 and v.certificate.verify(R.f, R.box)


def test_annulus_exact_certificate_from_contact_points():
    R = annulus()
    extra = [(1, 0), (F(-3, 5), F(4, 5)), (F(-3, 5), F(-4, 5))]
    v = smooth_star_check(R, 8, seed=0, extra_points=extra)
    assert v.kind == NOT_STAR and v.certificate.exact
    assert v.certificate.verify_family() and v.certificate.verify(R.f, R.box)


def test_zero_samples_is_unknown():
    assert smooth_star_check(disk(), 0).kind == UNKNOWN
