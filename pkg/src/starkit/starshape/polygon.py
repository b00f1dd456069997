"""Simple polygons: exact visibility, kernels and finite-visibility checks.

Predicates run on integers.  Every polygon keeps a copy of its vertices
scaled by the common denominator, and query points are brought to the
same scale, so orientation tests never touch a Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from ..hulls import conic_reduce
from ..numerics.lp import Feasible, LinearConstraint, lp_feasible
from ..numerics.rational import Halfspace, Q, fmt, fmt_vec, vec
from ..rng import stream
from .verdict import NOT_STAR, STAR, HalfspaceCertificate, StarVerdict, SupportingHalfspace


class PolygonError(ValueError):
    pass


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p) -> bool:
    return (
        _orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed segment intersection by orientation signs."""
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    return _on_segment(p1, p2, q1) or _on_segment(p1, p2, q2) or _on_segment(q1, q2, p1) or _on_segment(q1, q2, p2)


def _denominator(points) -> int:
    return lcm(1, *(c.denominator for p in points for c in p))


def _scaled(points, L: int) -> list[tuple[int, int]]:
    return [(int(p[0] * L), int(p[1] * L)) for p in points]


def _inside_int(X: int, Y: int, s: int, V: Sequence[tuple[int, int]]) -> bool:
    """Closed point-in-polygon test for the point ``(X/s, Y/s)``.

    Boundary points count as inside; otherwise the winding number decides.
    """
    wn = 0
    n = len(V)
    for i in range(n):
        a, b = V[i], V[(i + 1) % n]
        ax, ay, bx, by = a[0] * s, a[1] * s, b[0] * s, b[1] * s
        o = (bx - ax) * (Y - ay) - (by - ay) * (X - ax)
        if o == 0 and min(ax, bx) <= X <= max(ax, bx) and min(ay, by) <= Y <= max(ay, by):
            return True
        if ay <= Y:
            if by > Y and o > 0:
                wn += 1
        elif by <= Y and o < 0:
            wn -= 1
    return wn != 0


def _sees_int(p, q, V) -> bool:
    """Segment ``pq`` inside the closed polygon ``V``; all integer coordinates.

    The parameters where pq meets the boundary split it into pieces that
    are each entirely inside or entirely outside, so testing every piece's
    midpoint (with both endpoints already inside) decides containment.
    """
    if p == q:
        return True
    dx, dy = q[0] - p[0], q[1] - p[1]
    ts = {Fraction(0), Fraction(1)}
    n = len(V)
    for i in range(n):
        a, b = V[i], V[(i + 1) % n]
        o1, o2 = _orient(p, q, a), _orient(p, q, b)
        if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
            continue
        o3, o4 = _orient(a, b, p), _orient(a, b, q)
        if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
            continue
        if o1 == 0 and o2 == 0:
            dd = dx * dx + dy * dy
            for v in (a, b):
                t = Fraction((v[0] - p[0]) * dx + (v[1] - p[1]) * dy, dd)
                if 0 < t < 1:
                    ts.add(t)
        else:
            t = Fraction(o3, o3 - o4)
            if 0 < t < 1:
                ts.add(t)
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        m = (t0 + t1) / 2
        s, k = m.denominator, m.numerator
        if not _inside_int(p[0] * s + k * dx, p[1] * s + k * dy, s, V):
            return False
    return True


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with counterclockwise vertices."""

    vertices: tuple
    _scale: int = field(default=1, init=False, repr=False, compare=False)
    _ints: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(vec(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise PolygonError("a polygon needs at least three vertices")
        if any(len(v) != 2 for v in verts):
            raise PolygonError("polygon vertices must be planar")
        for i in range(n):
            if verts[i] == verts[(i + 1) % n]:
                raise PolygonError(f"consecutive vertices {i} and {(i + 1) % n} coincide")
        L = _denominator(verts)
        object.__setattr__(self, "_scale", L)
        object.__setattr__(self, "_ints", tuple(_scaled(verts, L)))
        self._check_simple()
        if self.signed_area() <= 0:
            raise PolygonError("vertices must be in counterclockwise order")

    def _check_simple(self):
        V, n = self._ints, len(self._ints)
        for i in range(n):
            a, b, c = V[i], V[(i + 1) % n], V[(i + 2) % n]
            if _orient(a, b, c) == 0 and (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0:
                raise PolygonError(f"edges at vertex {(i + 1) % n} fold back on each other")
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if segments_intersect(V[i], V[(i + 1) % n], V[j], V[(j + 1) % n]):
                    raise PolygonError(f"edges {i} and {j} intersect; polygon is not simple")

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[tuple, tuple]]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def signed_area(self) -> Fraction:
        return polygon_area(self.vertices)

    def edge_halfspace(self, i: int) -> Halfspace:
        """Inner halfplane of edge i (the side to its left)."""
        a, b = self.edges()[i]
        normal = (a[1] - b[1], b[0] - a[0])
        return Halfspace(normal, normal[0] * a[0] + normal[1] * a[1])

    def edge_halfspaces(self) -> list[Halfspace]:
        return [self.edge_halfspace(i) for i in range(len(self.vertices))]

    def _lift(self, points) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        L = lcm(self._scale, _denominator(points))
        k = L // self._scale
        V = [(x * k, y * k) for x, y in self._ints] if k != 1 else list(self._ints)
        return V, _scaled(points, L)

    def contains(self, p) -> bool:
        p = vec(p)
        V, (P,) = self._lift([p])
        return _inside_int(P[0], P[1], 1, V)

    def on_boundary(self, p) -> bool:
        p = vec(p)
        V, (P,) = self._lift([p])
        n = len(V)
        return any(_on_segment(V[i], V[(i + 1) % n], P) for i in range(n))

    def bounding_box(self) -> tuple[tuple, tuple]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), min(ys)), (max(xs), max(ys))

    def to_json(self) -> dict:
        return {"kind": "polygon", "vertices": [fmt_vec(v) for v in self.vertices]}


def polygon_area(vertices: Sequence[tuple]) -> Fraction:
    """Shoelace signed area (positive for counterclockwise order)."""
    n = len(vertices)
    twice = sum(
        (vertices[i][0] * vertices[(i + 1) % n][1] - vertices[(i + 1) % n][0] * vertices[i][1] for i in range(n)),
        Fraction(0),
    )
    return twice / 2


def sees(p, q, P: Polygon) -> bool:
    """Whether the closed segment pq lies in the closed polygon P."""
    p, q = vec(p), vec(q)
    V, (pi, qi) = P._lift([p, q])
    for name, pt in (("p", pi), ("q", qi)):
        if not _inside_int(pt[0], pt[1], 1, V):
            raise PolygonError(f"{name} lies outside the polygon")
    return _sees_int(pi, qi, V)


# --------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class Kernel:
    """Nonempty kernel as a convex polygon (possibly a segment or a point)."""

    vertices: tuple
    area: Fraction

    @property
    def point(self) -> tuple:
        n = len(self.vertices)
        return tuple(sum(v[k] for v in self.vertices) / n for k in range(2))

    def to_json(self) -> dict:
        return {"vertices": [fmt_vec(v) for v in self.vertices], "area": fmt(self.area)}


@dataclass(frozen=True)
class EmptyKernel:
    """Empty kernel, certified by at most three edge halfplanes."""

    edges: tuple
    certificate: HalfspaceCertificate

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "certificate": self.certificate.to_json()}


def _clip(poly: list[tuple], h: Halfspace) -> list[tuple]:
    out: list[tuple] = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        hc, hp = h.value(cur), h.value(prev)
        if hc >= 0:
            if hp < 0:
                out.append(_cut(prev, cur, hp, hc))
            out.append(cur)
        elif hp > 0:
            out.append(_cut(prev, cur, hp, hc))
    return _tidy(out)


def _cut(a, b, ha, hb) -> tuple:
    t = ha / (ha - hb)
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def _tidy(pts: list[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for p in pts:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(len(out)):
            a, b, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            if _orient(a, b, c) == 0 and (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) >= 0:
                del out[i]
                changed = True
                break
    return out


def _empty_kernel_certificate(P: Polygon) -> EmptyKernel:
    hs = P.edge_halfspaces()
    rows = [LinearConstraint(h.normal, h.offset) for h in hs]
    res = lp_feasible(rows, 2)
    assert not isinstance(res, Feasible)
    y = res.cert.multipliers
    keep, weights = conic_reduce(y, [tuple(h.normal) + (h.offset,) for h in hs], 3)
    family = tuple(SupportingHalfspace(P.vertices[i], hs[i]) for i in keep)
    cert = HalfspaceCertificate(family, tuple(weights))
    assert cert.verify_family()
    return EmptyKernel(tuple(keep), cert)


def polygon_kernel(P: Polygon) -> Kernel | EmptyKernel:
    """Intersect the inner halfplanes of all edges, exactly.

    The bounding box is clipped by each halfplane in turn.  An empty result
    is backed by a Farkas certificate on the edge halfplanes whose support
    is shrunk to three rows by conic Carathéodory in R^3.
    """
    (x0, y0), (x1, y1) = P.bounding_box()
    region = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for h in P.edge_halfspaces():
        region = _clip(region, h)
        if not region:
            return _empty_kernel_certificate(P)
    return Kernel(tuple(region), polygon_area(region) if len(region) > 2 else Fraction(0))


def star_shaped_polygon(P: Polygon) -> StarVerdict:
    k = polygon_kernel(P)
    if isinstance(k, Kernel):
        return StarVerdict(STAR, witness=k.point)
    return StarVerdict(NOT_STAR, certificate=k.certificate)


# --------------------------------------------------------------------------
# finite visibility


@dataclass(frozen=True)
class KrasnoselskiiReport:
    """Outcome of the sampled triple check.

    ``verdict`` is ``"agree"`` when the triple scan and the kernel agree,
    ``"unknown"`` when the kernel is empty but every sampled triple found a
    viewer on the grid (the grid may be too coarse), and ``"disagree"`` when
    a nonempty kernel coexists with a viewerless triple, which would be a
    bug since the kernel point is always offered as a viewer.
    """

    triples_checked: int
    all_have_viewer: bool
    viewerless_triple: tuple | None
    kernel_nonempty: bool
    grid_res: int
    verdict: str

    def to_json(self) -> dict:
        out = {
            "triples_checked": self.triples_checked,
            "all_have_viewer": self.all_have_viewer,
            "kernel_nonempty": self.kernel_nonempty,
            "grid_res": self.grid_res,
            "verdict": self.verdict,
        }
        if self.viewerless_triple is not None:
            out["viewerless_triple"] = [fmt_vec(p) for p in self.viewerless_triple]
        return out


def grid_points(P: Polygon, res: int) -> list[tuple]:
    """Points of the ``res`` x ``res`` grid over the bounding box lying in P."""
    if res < 2:
        raise PolygonError("grid resolution must be at least 2")
    (x0, y0), (x1, y1) = P.bounding_box()
    xs = [x0 + (x1 - x0) * Fraction(i, res - 1) for i in range(res)]
    ys = [y0 + (y1 - y0) * Fraction(j, res - 1) for j in range(res)]
    pts = [(x, y) for y in ys for x in xs]
    V, scaled = P._lift(pts)
    return [p for p, s in zip(pts, scaled) if _inside_int(s[0], s[1], 1, V)]


def boundary_pool(P: Polygon) -> list[tuple]:
    """Vertices followed by edge midpoints."""
    mids = [((a[0] + b[0]) / 2, (a[1] + b[1]) / 2) for a, b in P.edges()]
    return list(P.vertices) + mids


def visibility_masks(P: Polygon, sources: Sequence[tuple], targets: Sequence[tuple]) -> list[int]:
    """Bit ``g`` of entry ``i`` is set iff ``sources[i]`` sees ``targets[g]``."""
    V, scaled = P._lift(list(sources) + list(targets))
    src, tgt = scaled[: len(sources)], scaled[len(sources) :]
    masks = []
    for s in src:
        m = 0
        for g, t in enumerate(tgt):
            if _sees_int(s, t, V):
                m |= 1 << g
        masks.append(m)
    return masks


def krasnoselskii_triples(P: Polygon, budget: int = 2000, grid_res: int = 64, seed: int = 0) -> KrasnoselskiiReport:
    """Check that sampled boundary triples have a common viewer.

    The pool holds the vertices and edge midpoints.  All triples are used
    when there are at most ``budget`` of them, otherwise ``budget`` triples
    are drawn from the ``"krasnoselskii"`` stream.  Candidate viewers are
    the grid points inside P plus, when it exists, a kernel point.
    """
    pool = boundary_pool(P)
    kernel = polygon_kernel(P)
    viewers = grid_points(P, grid_res)
    if isinstance(kernel, Kernel):
        viewers.append(kernel.point)
    masks = visibility_masks(P, pool, viewers)
    total = comb(len(pool), 3)
    if total <= budget:
        triples = list(combinations(range(len(pool)), 3))
    else:
        rng = stream(seed, "krasnoselskii")
        picks = sorted(rng.sample(range(total), budget))
        triples, wanted = [], iter(picks)
        nxt = next(wanted, None)
        for k, t in enumerate(combinations(range(len(pool)), 3)):
            if k == nxt:
                triples.append(t)
                nxt = next(wanted, None)
                if nxt is None:
                    break
    bad = None
    for i, j, k in triples:
        if not masks[i] & masks[j] & masks[k]:
            bad = (pool[i], pool[j], pool[k])
            break
    nonempty = isinstance(kernel, Kernel)
    if nonempty:
        verdict = "agree" if bad is None else "disagree"
    else:
        verdict = "agree" if bad is not None else "unknown"
    return KrasnoselskiiReport(len(triples), bad is None, bad, nonempty, grid_res, verdict)


# --------------------------------------------------------------------------
# test families


def l_shape() -> Polygon:
    return Polygon(((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))


def comb_polygon(teeth: int = 3) -> Polygon:
    """Sawtooth comb: a ``2*teeth`` x 1 base with triangular teeth of height 2."""
    if teeth < 1:
        raise PolygonError("a comb needs at least one tooth")
    verts = [(0, 0), (2 * teeth, 0), (2 * teeth, 1)]
    for i in range(teeth - 1, -1, -1):
        verts += [(2 * i + 1, 3), (2 * i, 1)]
    return Polygon(tuple(verts))


def hare_kenelly_truncation(k: int, box_width) -> Polygon:
    """Union of the strips ``{n-1 <= y <= n, x + y >= n}`` for ``n <= k``,
    clipped to ``[0, box_width] x [0, k]``.

    Each strip's left side is the diagonal from ``(1, n-1)`` to ``(0, n)``,
    so the boundary is a staircase of diagonals joined by unit horizontal
    steps at the integer heights.
    """
    W = Q(box_width)
    if k < 1:
        raise PolygonError("k must be at least 1")
    if W <= k:
        raise PolygonError("box_width must exceed k so every strip keeps positive width")
    verts = [(1, 0), (W, 0), (W, k), (0, k)]
    for n in range(k - 1, 0, -1):
        verts += [(1, n), (0, n)]
    return Polygon(tuple(verts))
