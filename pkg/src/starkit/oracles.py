"""Brute-force reference deciders used by the property suites.

Each oracle reaches its verdict by a route that does not go through the
simplex code it is compared against.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .numerics.linalg import rref, solve_any
from .numerics.lp import EQ, GE, GT, LinearConstraint
from .numerics.rational import dot, norm_sq, sub


def _int_row(a: Sequence, b) -> list[int]:
    L = lcm(Fraction(b).denominator, *(Fraction(x).denominator for x in a))
    return [int(x * L) for x in a] + [int(b * L)]


def _bareiss_solve(M: list[list[int]]):
    """Solve the square integer system ``M = [A | b]``; None if singular."""
    M = [r[:] for r in M]
    n = len(M)
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return None
        M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            f = M[i][k]
            M[i] = [(pk * a - f * c) // prev for a, c in zip(M[i], M[k])]
        prev = pk
    x = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        s = Fraction(M[k][n]) - sum((M[k][j] * x[j] for j in range(k + 1, n)), Fraction(0))
        x[k] = s / M[k][k]
    return x


def _face_candidates(rows: Sequence[tuple[tuple, Fraction, str]], dim: int):
    """Yield one point from every minimal-face candidate ``A_I x = b_I``.

    A nonempty polyhedron has a minimal face ``{x : A_I x = b_I}`` with
    ``rank A_I = rank A``.  Fixing ``r = rank A`` independent columns turns
    each candidate into a square system.
    """
    normals = [a for a, _, _ in rows]
    _, pivots = rref(normals) if normals else ([], [])
    r = len(pivots)
    if r == 0:
        yield (Fraction(0),) * dim
        return
    ints = [_int_row([a[c] for c in pivots], b) for a, b, _ in rows]
    for subset in combinations(range(len(rows)), r):
        sol = _bareiss_solve([ints[i] for i in subset])
        if sol is None:
            continue
        x = [Fraction(0)] * dim
        for c, v in zip(pivots, sol):
            x[c] = v
        yield tuple(x)


def _holds(row, x) -> bool:
    a, b, rel = row
    s = dot(a, x) - b
    return s == 0 if rel == EQ else s >= 0


def brute_force_feasible(constraints: Sequence[LinearConstraint], dim: int) -> bool:
    """Feasibility of a system with ``>=``, ``>`` and ``=`` rows.

    Strict rows are decided by maximizing a shared slack ``0 <= t <= 1`` over
    the minimal faces of the lifted polyhedron: the maximum of a bounded
    linear function over a polyhedron is attained on a minimal face.
    """
    if not any(c.relation == GT for c in constraints):
        rows = [(c.normal, c.offset, c.relation) for c in constraints]
        return any(all(_holds(row, x) for row in rows) for x in _face_candidates(rows, dim))
    zero = (Fraction(0),) * dim
    rows = [
        (c.normal + (Fraction(-1) if c.relation == GT else Fraction(0),), c.offset, EQ if c.relation == EQ else GE)
        for c in constraints
    ]
    rows.append((zero + (Fraction(1),), Fraction(0), GE))
    rows.append((zero + (Fraction(-1),), Fraction(-1), GE))
    return any(x[-1] > 0 and all(_holds(row, x) for row in rows) for x in _face_candidates(rows, dim + 1))


def circumball(points: Sequence[tuple]):
    """Smallest ball with every point on its boundary, or None if none exists."""
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    if not diffs:
        return base, Fraction(0)
    gram = [[dot(u, v) for v in diffs] for u in diffs]
    rhs = [norm_sq(u) / 2 for u in diffs]
    alpha = solve_any(gram, rhs)
    if alpha is None:
        return None
    center = tuple(base[k] + sum((a * u[k] for a, u in zip(alpha, diffs)), Fraction(0)) for k in range(len(base)))
    r2 = norm_sq(sub(center, base))
    if any(norm_sq(sub(center, p)) != r2 for p in points):
        return None
    return center, r2


def brute_force_min_ball(points: Sequence[tuple]):
    """Minimum enclosing ball by trying every support set of size <= d+1."""
    dim = len(points[0])
    best = None
    for k in range(1, dim + 2):
        for subset in combinations(range(len(points)), k):
            ball = circumball([points[i] for i in subset])
            if ball is None:
                continue
            c, r2 = ball
            if best is not None and r2 >= best[1]:
                continue
            if all(norm_sq(sub(p, c)) <= r2 for p in points):
                best = (c, r2)
    return best


def conv_oracle(q: tuple, points: Sequence[tuple]) -> bool:
    """Carathéodory enumeration: q in conv iff q is a nonnegative barycentric
    combination of some affinely independent subset."""
    dim = len(q)
    for k in range(1, min(dim + 1, len(points)) + 1):
        for subset in combinations(range(len(points)), k):
            pts = [points[i] for i in subset]
            A = [[p[r] for p in pts] for r in range(dim)] + [[Fraction(1)] * k]
            lam = solve_any(A, list(q) + [Fraction(1)])
            if lam is not None and all(l >= 0 for l in lam):
                return True
    return False


def interior_oracle(q: tuple, points: Sequence[tuple]) -> bool:
    """q is interior iff the points span R^d and q lies strictly inside every
    hyperplane through d of the points that has all points on one side.

    Facets of a full-dimensional hull are among those hyperplanes, and the
    interior is the intersection of the open facet halfspaces.
    """
    d = len(q)
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if len(pts) < d + 1:
        return False
    base = pts[0]
    if len(rref([sub(p, base) for p in pts[1:]])[1]) < d:
        return False
    for subset in combinations(range(len(pts)), d):
        anchor = pts[subset[0]]
        diffs = [sub(pts[i], anchor) for i in subset[1:]]
        M, pivots = rref(diffs) if diffs else ([], [])
        if len(pivots) < d - 1:
            continue
        free = next(j for j in range(d) if j not in pivots)
        normal = [Fraction(0)] * d
        normal[free] = Fraction(1)
        for row, pc in zip(M, pivots):
            normal[pc] = -row[free]
        c = dot(normal, anchor)
        side = [dot(normal, p) - c for p in pts]
        if all(s >= 0 for s in side):
            pass
        elif all(s <= 0 for s in side):
            normal, c = [-a for a in normal], -c
        else:
            continue
        if dot(normal, q) - c <= 0:
            return False
    return True


def halfplane_intersection_area(halfplanes: Sequence[tuple[tuple, Fraction]]) -> Fraction | None:
    """Area of ``{p : n . p >= c}`` over planar halfplanes ``(n, c)``, by
    enumerating pairwise line intersections; None when the intersection is
    empty, 0 when it has no interior.  Assumes the region is bounded."""
    verts = set()
    for (n1, c1), (n2, c2) in combinations(halfplanes, 2):
        det = n1[0] * n2[1] - n1[1] * n2[0]
        if det == 0:
            continue
        p = ((c1 * n2[1] - c2 * n1[1]) / det, (n1[0] * c2 - n2[0] * c1) / det)
        if all(dot(n, p) >= c for n, c in halfplanes):
            verts.add(p)
    if not verts:
        return None
    pts = sorted(verts)
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    upper: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    twice = sum(hull[i][0] * hull[(i + 1) % len(hull)][1] - hull[(i + 1) % len(hull)][0] * hull[i][1] for i in range(len(hull)))
    return abs(Fraction(twice)) / 2
