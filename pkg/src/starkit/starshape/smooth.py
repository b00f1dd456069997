"""Star-shapedness evidence for smooth regions ``{x : f(x) >= 0}``.

Boundary points come from sign changes of ``f`` along rays.  Each yields
the tangent halfspace ``{y : (y - z) . grad f(z) >= 0}``.  If sampled
halfspaces have no common point, the region is certainly not star-shaped
and a certificate on at most ``d + 1`` of them is returned.  If they do
share a point, that point is only a candidate: it is accepted when sign
sampling of ``f`` along the segments to every sample stays nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..hulls import conic_reduce
from ..numerics.lp import Feasible, LinearConstraint, Optimal, lp_feasible, lp_maximize
from ..numerics.poly import Interval, Polynomial, poly_eval, poly_gradient
from ..numerics.rational import Halfspace, Q, dot, fmt_vec, lerp, unit, vec
from ..rng import stream
from .verdict import NOT_STAR, STAR, UNKNOWN, HalfspaceCertificate, StarVerdict, SupportingHalfspace

BISECTION_BITS = 30
RAY_STEPS = 64
SEGMENT_DENSITY = 257
SNAP_DENOMINATOR = 1000


class SmoothnessViolation(ValueError):
    """The gradient vanishes (or may vanish) at a boundary point."""


class NotBoundaryPoint(ValueError):
    pass


class NoInteriorPoint(ValueError):
    pass


@dataclass(frozen=True)
class SmoothRegion:
    """``{x : f(x) >= 0}`` with a declared bounding box ``[(lo, hi), ...]``."""

    f: Polynomial
    box: tuple

    def __post_init__(self):
        box = tuple((Q(lo), Q(hi)) for lo, hi in self.box)
        if len(box) != self.f.dim:
            raise ValueError("box dimension does not match the polynomial")
        if any(lo >= hi for lo, hi in box):
            raise ValueError("box sides must have positive length")
        object.__setattr__(self, "box", box)

    @property
    def dim(self) -> int:
        return self.f.dim

    def value(self, x) -> Fraction:
        return poly_eval(self.f, x)

    def gradient(self) -> list[Polynomial]:
        return poly_gradient(self.f)

    def to_json(self) -> dict:
        return {
            "kind": "smooth_region",
            "dim": self.dim,
            "terms": self.f.to_json(),
            "box": [fmt_vec(side) for side in self.box],
        }


def disk(radius_sq=1, box=2) -> SmoothRegion:
    x, y = Polynomial.variables(2)
    return SmoothRegion(radius_sq - x * x - y * y, ((-box, box), (-box, box)))


def annulus(inner_sq=1, outer_sq=4, box=3) -> SmoothRegion:
    x, y = Polynomial.variables(2)
    r = x * x + y * y
    return SmoothRegion((r - inner_sq) * (outer_sq - r), ((-box, box), (-box, box)))


@dataclass(frozen=True)
class BoundaryPoint:
    """An exact zero of f, or a bracket ``(lo, hi)`` with f of opposite signs
    at the ends (``point`` is then the bracket midpoint)."""

    point: tuple
    bracket: tuple | None = None

    @property
    def exact(self) -> bool:
        return self.bracket is None

    def to_json(self) -> dict:
        out = {"point": fmt_vec(self.point), "exact": self.exact}
        if self.bracket:
            out["bracket"] = [fmt_vec(self.bracket[0]), fmt_vec(self.bracket[1])]
        return out


def _ray_exit(R: SmoothRegion, s, u) -> Fraction:
    """Largest tau with ``s + tau u`` in the box."""
    taus = []
    for (lo, hi), sk, uk in zip(R.box, s, u):
        if uk > 0:
            taus.append((hi - sk) / uk)
        elif uk < 0:
            taus.append((lo - sk) / uk)
    return min(taus)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def ray_crossings(R: SmoothRegion, origin, direction, steps: int = RAY_STEPS, first_only: bool = False) -> list[BoundaryPoint]:
    """Boundary points along the ray ``origin + tau * direction`` in the box.

    The ray is scanned at ``steps`` equal steps; each sign change is
    narrowed by bisection until the bracket is at most ``2**-30`` long in
    every coordinate.  The simplest rational in the bracket with a small
    denominator is then tried, so rational roots come out exact.
    """
    s, u = vec(origin), vec(direction)
    if all(c == 0 for c in u):
        raise ValueError("ray direction must be nonzero")
    tmax = _ray_exit(R, s, u)
    if tmax <= 0:
        return []
    scale = max(abs(c) for c in u)
    out: list[BoundaryPoint] = []

    def at(tau):
        return tuple(a + tau * b for a, b in zip(s, u))

    prev_t = Fraction(0)
    prev_v = R.value(s)
    if prev_v == 0:
        out.append(BoundaryPoint(s))
        if first_only:
            return out
    for k in range(1, steps + 1):
        t = tmax * k / steps
        v = R.value(at(t))
        if v == 0:
            out.append(BoundaryPoint(at(t)))
        elif prev_v != 0 and _sign(v) != _sign(prev_v):
            out.append(_bisect(R, at, prev_t, t, prev_v, scale))
        if out and first_only:
            return out[:1]
        prev_t, prev_v = t, v
    return out


def _bisect(R, at, lo, hi, vlo, scale) -> BoundaryPoint:
    eps = Fraction(1, 2**BISECTION_BITS)
    while (hi - lo) * scale > eps:
        mid = (lo + hi) / 2
        vm = R.value(at(mid))
        if vm == 0:
            return BoundaryPoint(at(mid))
        if _sign(vm) == _sign(vlo):
            lo, vlo = mid, vm
        else:
            hi = mid
    guess = ((lo + hi) / 2).limit_denominator(SNAP_DENOMINATOR)
    if lo <= guess <= hi and R.value(at(guess)) == 0:
        return BoundaryPoint(at(guess))
    a, b = at(lo), at(hi)
    return BoundaryPoint(at((lo + hi) / 2), (a, b))


def _random_point(rng, box) -> tuple:
    return tuple(lo + (hi - lo) * Fraction(rng.randint(1, 63), 64) for lo, hi in box)


def interior_seeds(R: SmoothRegion, count: int, seed: int, tries: int = 4000) -> list[tuple]:
    rng = stream(seed, "smooth/seeds")
    seeds = []
    for _ in range(tries):
        p = _random_point(rng, R.box)
        if R.value(p) > 0:
            seeds.append(p)
            if len(seeds) == count:
                break
    if not seeds:
        raise NoInteriorPoint("no point with f > 0 found in the box")
    return seeds


def boundary_sample(R: SmoothRegion, n: int, seed: int) -> list[BoundaryPoint]:
    """Up to n boundary points from random rays out of random interior seeds.

    Sample ``i`` uses the stream ``"smooth/ray/<i>"`` for its direction and
    cycles through the seeds, so its outcome does not depend on the others.
    """
    if n <= 0:
        return []
    seeds = interior_seeds(R, min(n, 16), seed)
    out = []
    for i in range(n):
        rng = stream(seed, f"smooth/ray/{i}")
        u = (0,) * R.dim
        while all(c == 0 for c in u):
            u = tuple(Fraction(rng.randint(-8, 8)) for _ in range(R.dim))
        hits = ray_crossings(R, seeds[i % len(seeds)], u, first_only=True)
        if hits:
            out.append(hits[0])
    return out


def supporting_halfspace(R: SmoothRegion, z: BoundaryPoint | Sequence) -> SupportingHalfspace:
    """The tangent halfspace ``{y : (y - z) . grad f(z) >= 0}``.

    Exact points must satisfy ``f(z) = 0``.  Bracketed points need the
    bracket to straddle a sign change, and the gradient's interval
    enclosure over the bracket must exclude the zero vector; the halfspace
    is then computed at the midpoint.
    """
    if not isinstance(z, BoundaryPoint):
        z = BoundaryPoint(vec(z))
    grad = R.gradient()
    p = z.point
    if z.exact:
        if R.value(p) != 0:
            raise NotBoundaryPoint(f"f does not vanish at {fmt_vec(p)}")
    else:
        lo, hi = z.bracket
        if R.value(lo) * R.value(hi) >= 0:
            raise NotBoundaryPoint("bracket does not straddle a sign change")
        box = [Interval(min(a, b), max(a, b)) for a, b in zip(lo, hi)]
        encl = [poly_eval(g, box) for g in grad]
        if all((e.contains(0) if isinstance(e, Interval) else e == 0) for e in encl):
            raise SmoothnessViolation(f"gradient may vanish near {fmt_vec(p)}")
    g = tuple(poly_eval(gk, p) for gk in grad)
    if all(c == 0 for c in g):
        raise SmoothnessViolation(f"gradient vanishes at {fmt_vec(p)}")
    return SupportingHalfspace(p, Halfspace(g, dot(g, p)), z.bracket)


def _box_rows(box, nvar: int, slack_col: int | None) -> list[LinearConstraint]:
    rows = []
    for k, (lo, hi) in enumerate(box):
        for sign, bound in ((1, lo), (-1, -hi)):
            a = list(unit(nvar, k, sign))
            if slack_col is not None:
                a[slack_col] = Fraction(-1)
            rows.append(LinearConstraint(tuple(a), bound))
    return rows


def _deep_point(R: SmoothRegion, hs: list[SupportingHalfspace]):
    """Point of the box maximizing the smallest (1-norm scaled) slack."""
    d = R.dim
    nv = d + 1
    rows = []
    for h in hs:
        w = sum(abs(c) for c in h.halfspace.normal)
        rows.append(LinearConstraint(tuple(h.halfspace.normal) + (-w,), h.halfspace.offset))
    rows += _box_rows(R.box, nv, d)
    rows.append(LinearConstraint(unit(nv, d, -1), -1))
    res = lp_maximize(rows, unit(nv, d), nv)
    assert isinstance(res, Optimal)
    return res.point[:d], res.value


def _sees_by_sampling(R: SmoothRegion, x, z, density: int) -> bool:
    return all(R.value(lerp(x, z, Fraction(j, density))) >= 0 for j in range(density))


def _certificate(hs: list[SupportingHalfspace], d: int) -> HalfspaceCertificate | None:
    rows = [LinearConstraint(h.halfspace.normal, h.halfspace.offset) for h in hs]
    res = lp_feasible(rows, d)
    if isinstance(res, Feasible):
        return None
    keep, y = conic_reduce(res.cert.multipliers, [tuple(h.halfspace.normal) + (h.halfspace.offset,) for h in hs], d + 1)
    total = sum(y)
    return HalfspaceCertificate(tuple(hs[i] for i in keep), tuple(v / total for v in y))


def smooth_star_check(
    R: SmoothRegion,
    n_samples: int,
    seed: int = 0,
    density: int = SEGMENT_DENSITY,
    extra_points: Sequence = (),
) -> StarVerdict:
    """Sampled star-shapedness test built on tangent halfspaces.

    ``extra_points`` are additional exact boundary points.  Exact samples
    are tried first when looking for an empty-intersection certificate, so
    that a certificate checkable by plain substitution is preferred over
    one needing interval bounds.
    """
    points = [BoundaryPoint(vec(p)) for p in extra_points] + boundary_sample(R, n_samples, seed)
    d = R.dim
    if len(points) < d + 1:
        return StarVerdict(UNKNOWN, diagnostic=f"only {len(points)} boundary samples; need at least {d + 1}")
    hs = [supporting_halfspace(R, z) for z in points]
    x, depth = _deep_point(R, hs)
    if depth >= 0:
        rounded = tuple(c.limit_denominator(64) for c in x)
        if all(h.halfspace.contains(rounded) for h in hs) and all(lo <= c <= hi for c, (lo, hi) in zip(rounded, R.box)):
            x = rounded
        if R.value(x) >= 0 and all(_sees_by_sampling(R, x, h.contact, density) for h in hs):
            return StarVerdict(STAR, witness=x, diagnostic=f"segments verified at sampling density {density}")
        return StarVerdict(UNKNOWN, witness=x, diagnostic="candidate witness failed the segment sampling check")
    exact_hs = [h for h in hs if h.exact]
    cert = _certificate(exact_hs, d) if len(exact_hs) > d else None
    if cert is None:
        cert = _certificate(hs, d)
    if cert is None:
        return StarVerdict(UNKNOWN, diagnostic="sampled halfspaces meet only outside the declared box")
    if not cert.verify(R.f, R.box):
        return StarVerdict(UNKNOWN, certificate=cert, diagnostic="certificate is not robust to the bracket widths")
    return StarVerdict(NOT_STAR, certificate=cert)
