"""Smallest enclosing balls and the radius decision.

Radii are kept squared so every quantity stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..hulls import PointSet, _as_pointset
from ..numerics.linalg import solve_any
from ..numerics.rational import dot, fmt, fmt_vec, norm_sq, sub

DIRECT = "direct"
HELLY = "helly"
BOTH = "both"


class HellyDisagreement(AssertionError):
    """The direct and subset radius decisions differ (cannot happen for
    correct code, by Helly's theorem)."""


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius_sq: Fraction

    def contains(self, p) -> bool:
        return norm_sq(sub(p, self.center)) <= self.radius_sq

    def to_json(self) -> dict:
        return {"center": fmt_vec(self.center), "radius_sq": fmt(self.radius_sq)}


def _boundary_ball(boundary: list[tuple]) -> Ball | None:
    """Smallest ball with every boundary point on its sphere.

    The center is ``b0 + sum alpha_k (b_k - b0)`` where the Gram system
    ``G alpha = |b_k - b0|^2 / 2`` pins it to the affine hull.
    """
    if not boundary:
        return None
    base = boundary[0]
    diffs = [sub(p, base) for p in boundary[1:]]
    if not diffs:
        return Ball(base, Fraction(0))
    gram = [[dot(u, v) for v in diffs] for u in diffs]
    alpha = solve_any(gram, [norm_sq(u) / 2 for u in diffs])
    if alpha is None:
        raise AssertionError("support points admit no common sphere")
    center = tuple(base[k] + sum((a * u[k] for a, u in zip(alpha, diffs)), Fraction(0)) for k in range(len(base)))
    return Ball(center, norm_sq(sub(center, base)))


def min_enclosing_ball(S) -> Ball:
    """Exact minimum enclosing ball by Welzl's move-to-front recursion.

    ``mtf(n, B)`` returns the smallest ball enclosing the first ``n`` points
    of the working list with ``B`` on its boundary; a point found outside is
    added to ``B`` and moved to the front.  Support sets never exceed
    ``d + 1`` points.
    """
    S = _as_pointset(S)
    if not len(S):
        raise ValueError("enclosing ball of an empty set")
    pts = list(S)
    d = S.dim

    def mtf(n: int, boundary: list[tuple]) -> Ball | None:
        ball = _boundary_ball(boundary)
        if len(boundary) == d + 1:
            return ball
        i = 0
        while i < n:
            p = pts[i]
            if ball is None or not ball.contains(p):
                ball = mtf(i, boundary + [p])
                pts.insert(0, pts.pop(i))
            i += 1
        return ball

    ball = mtf(len(pts), [])
    assert ball is not None and all(ball.contains(p) for p in S)
    return ball


def _subset_balls(S: PointSet):
    k = min(S.dim + 1, len(S))
    for idx in combinations(range(len(S)), k):
        yield min_enclosing_ball(PointSet(S.dim, tuple(S[i] for i in idx)))


def helly_radius_sq(S) -> Fraction:
    """Largest minimum-ball radius^2 over the ``(d+1)``-subsets of S."""
    S = _as_pointset(S)
    if not len(S):
        raise ValueError("radius of an empty set")
    return max(ball.radius_sq for ball in _subset_balls(S))


def radius_at_most(S, r_sq, mode: str = DIRECT) -> bool:
    """Whether S fits in a ball of squared radius ``r_sq``.

    Equivalently, whether the balls of that radius centered at the points
    of S share a point.  ``helly`` checks every ``(d+1)``-subset instead of
    the whole set; ``both`` runs the two and insists they agree.
    """
    S = _as_pointset(S)
    r_sq = Fraction(r_sq)
    if not len(S):
        raise ValueError("radius of an empty set")
    if r_sq < 0:
        raise ValueError("squared radius must be nonnegative")
    if mode == DIRECT:
        return min_enclosing_ball(S).radius_sq <= r_sq
    if mode == HELLY:
        return all(ball.radius_sq <= r_sq for ball in _subset_balls(S))
    if mode == BOTH:
        a, b = radius_at_most(S, r_sq, DIRECT), radius_at_most(S, r_sq, HELLY)
        if a != b:
            raise HellyDisagreement(f"direct={a} helly={b}")
        return a
    raise ValueError(f"unknown radius mode {mode!r}")
