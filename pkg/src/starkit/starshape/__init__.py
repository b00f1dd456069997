"""Star-shapedness: polygons, spherical points, smooth regions and radii."""

from .polygon import (
    EmptyKernel,
    Kernel,
    KrasnoselskiiReport,
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
from .radius import Ball, HellyDisagreement, helly_radius_sq, min_enclosing_ball, radius_at_most
from .smooth import (
    BoundaryPoint,
    SmoothnessViolation,
    SmoothRegion,
    annulus,
    boundary_sample,
    disk,
    ray_crossings,
    smooth_star_check,
    supporting_halfspace,
)
from .spherical import SphericalPointError, SphericalPointResult, spherical_point
from .verdict import NOT_STAR, STAR, UNKNOWN, HalfspaceCertificate, StarVerdict, SupportingHalfspace

__all__ = [
    "Ball", "BoundaryPoint", "EmptyKernel", "HalfspaceCertificate", "HellyDisagreement", "Kernel",
    "KrasnoselskiiReport", "NOT_STAR", "Polygon", "PolygonError", "STAR", "SmoothRegion",
    "SmoothnessViolation", "SphericalPointError", "SphericalPointResult", "StarVerdict",
    "SupportingHalfspace", "UNKNOWN", "annulus", "boundary_sample", "comb_polygon", "disk",
    "hare_kenelly_truncation", "helly_radius_sq", "krasnoselskii_triples", "l_shape", "min_enclosing_ball",
    "polygon_kernel", "radius_at_most", "ray_crossings", "sees", "smooth_star_check",
    "spherical_point", "star_shaped_polygon", "supporting_halfspace",
]
