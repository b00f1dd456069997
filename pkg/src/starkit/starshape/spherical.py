"""Spherical points by sliding a ball along a segment.

Given ``y`` in S and a segment ``xy`` leaving S, a ball centered on the
segment outside S is slid toward ``y`` until it first touches S.  The touch
point ``z`` is a spherical point, and the tangent halfspace at ``z``
excludes ``x``.

Everything is exact.  With ``c(t) = x + t (y - x)`` and ``g(t)`` the squared
distance from ``c(t)`` to S, the ball starts at some ``t0`` where
``c(t0)`` is outside S.  A second parameter ``t1`` closer to the first
contact is picked with ``g(t1) < g(t0)``, and the radius is set to
``rho^2 = min g`` over ``[t0, t1]``.  Then the slide from ``t0`` first
touches S exactly at the earliest minimizer ``t*`` of ``g`` on that
interval.  ``g`` is a minimum of convex piecewise quadratics (one per point
or edge), so its minimizers are rational and found by enumerating the
breakpoints and vertices of the pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..hulls import PointSet, _as_pointset
from ..numerics.rational import Halfspace, dot, fmt, fmt_vec, lerp, norm_sq, sub, vec
from .polygon import Polygon, PolygonError, sees


class SphericalPointError(ValueError):
    pass


@dataclass(frozen=True)
class SphericalPointResult:
    """``halfspace`` is ``{p : (p - z) . (z - center) >= 0}``."""

    z: tuple
    ball_center: tuple
    ball_radius_sq: Fraction
    halfspace: Halfspace
    t: Fraction

    def verify(self, x, S) -> bool:
        x = vec(x)
        r2, c, z = self.ball_radius_sq, self.ball_center, self.z
        if r2 <= 0 or norm_sq(sub(z, c)) != r2:
            return False
        expected = Halfspace(sub(z, c), dot(z, sub(z, c)))
        if expected != self.halfspace or self.halfspace.contains(x):
            return False
        if isinstance(S, Polygon):
            if not S.on_boundary(z) or S.contains(c):
                return False
            return all(_seg_dist_sq(c, a, b) >= r2 for a, b in S.edges())
        S = _as_pointset(S)
        return z in S.points and all(norm_sq(sub(p, c)) >= r2 for p in S)

    def to_json(self) -> dict:
        return {
            "z": fmt_vec(self.z),
            "ball_center": fmt_vec(self.ball_center),
            "ball_radius_sq": fmt(self.ball_radius_sq),
            "halfspace": self.halfspace.to_json(),
            "t": fmt(self.t),
        }


def _closest_on_segment(p, a, b) -> tuple:
    e = sub(b, a)
    ee = norm_sq(e)
    if ee == 0:
        return a
    s = min(max(dot(sub(p, a), e) / ee, Fraction(0)), Fraction(1))
    return tuple(ai + s * ei for ai, ei in zip(a, e))


def _seg_dist_sq(p, a, b) -> Fraction:
    return norm_sq(sub(p, _closest_on_segment(p, a, b)))


def _candidates(x, dv, a, b, lo, hi) -> set:
    """Parameters in ``[lo, hi]`` where ``t -> dist^2(x + t dv, [a, b])`` can
    start a minimizing interval: piece breakpoints and piece vertices."""
    out = {lo, hi}
    dd = norm_sq(dv)
    for v in (a, b):
        out.add(dot(sub(v, x), dv) / dd)
    e = sub(b, a)
    ee = norm_sq(e)
    if ee:
        de = dot(dv, e)
        base = dot(sub(x, a), e)
        if de:
            out.add((0 - base) / de)
            out.add((ee - base) / de)
        perp = tuple(dk - de / ee * ek for dk, ek in zip(dv, e))
        pp = norm_sq(perp)
        if pp:
            w0 = sub(x, a)
            w0 = tuple(wk - base / ee * ek for wk, ek in zip(w0, e))
            out.add(-dot(w0, perp) / pp)
    return {t for t in out if lo <= t <= hi}


def _slide(x, y, pieces: Sequence[tuple[tuple, tuple]], t0: Fraction, t_hit: Fraction):
    dv = sub(y, x)

    def g(t):
        c = lerp(x, y, t)
        return min(_seg_dist_sq(c, a, b) for a, b in pieces)

    g0 = g(t0)
    step = (t_hit - t0) / 2
    t1 = t_hit - step
    while g(t1) >= g0:
        step /= 2
        t1 = t_hit - step
    cands = set()
    for a, b in pieces:
        cands |= _candidates(x, dv, a, b, t0, t1)
    values = {t: g(t) for t in cands}
    rho2 = min(values.values())
    t_star = min(t for t, v in values.items() if v == rho2)
    c = lerp(x, y, t_star)
    z = None
    for a, b in pieces:
        p = _closest_on_segment(c, a, b)
        if norm_sq(sub(p, c)) == rho2:
            z = p
            break
    assert z is not None and rho2 > 0
    return z, c, rho2, t_star


def spherical_point(x, y, S: PointSet | Polygon | Sequence) -> SphericalPointResult:
    """Slide a ball from x toward y until it first touches S.

    ``S`` is a finite point set or a polygon.  Requires ``y`` in S and the
    segment ``xy`` not contained in S.
    """
    x, y = vec(x), vec(y)
    if x == y:
        raise SphericalPointError("x and y coincide, so the segment lies in S")
    if isinstance(S, Polygon):
        if not S.contains(y):
            raise SphericalPointError("y is not in the polygon")
        if S.contains(x) and sees(x, y, S):
            raise SphericalPointError("segment xy lies in the polygon")
        t0, t_hit = _polygon_gap(x, y, S)
        pieces = S.edges()
    else:
        S = _as_pointset(S, len(x))
        if len(x) != S.dim or len(y) != S.dim:
            raise SphericalPointError("dimension mismatch")
        if y not in S.points:
            raise SphericalPointError("y is not a point of S")
        dv, dd = sub(y, x), norm_sq(sub(y, x))
        on_seg = []
        for p in S:
            t = dot(sub(p, x), dv) / dd
            if 0 <= t < 1 and lerp(x, y, t) == p:
                on_seg.append(t)
        t_prev = max(on_seg, default=Fraction(0))
        t0, t_hit = (t_prev + 1) / 2, Fraction(1)
        pieces = [(p, p) for p in S]
    z, c, rho2, t_star = _slide(x, y, pieces, t0, t_hit)
    normal = sub(z, c)
    h = Halfspace(normal, dot(z, normal))
    res = SphericalPointResult(z, c, rho2, h, t_star)
    assert h.value(x) < 0, "x must lie strictly outside the tangent halfspace"
    assert res.verify(x, S)
    return res


def _polygon_gap(x, y, P: Polygon) -> tuple[Fraction, Fraction]:
    """An outside parameter ``t0`` and the next boundary contact after it.

    The segment is cut where it meets the boundary; the last piece whose
    midpoint is outside supplies both values.
    """
    dv = sub(y, x)
    ts = {Fraction(0), Fraction(1)}
    for a, b in P.edges():
        e = sub(b, a)
        den = dv[0] * e[1] - dv[1] * e[0]
        w = sub(a, x)
        if den != 0:
            t = (w[0] * e[1] - w[1] * e[0]) / den
            s = (w[0] * dv[1] - w[1] * dv[0]) / den
            if 0 <= t <= 1 and 0 <= s <= 1:
                ts.add(t)
        elif w[0] * dv[1] - w[1] * dv[0] == 0:
            dd = norm_sq(dv)
            for v in (a, b):
                t = dot(sub(v, x), dv) / dd
                if 0 <= t <= 1:
                    ts.add(t)
    ts = sorted(ts)
    for lo, hi in reversed(list(zip(ts, ts[1:]))):
        mid = (lo + hi) / 2
        if not P.contains(lerp(x, y, mid)):
            return mid, hi
    raise PolygonError("segment does not leave the polygon")
