"""Convex-hull, interior and positive-hull membership with witnesses.

Membership answers always carry evidence that can be re-checked with exact
arithmetic: a convex (or conic) combination on few points when the answer
is yes, and a separating halfspace read off the LP duals when it is no.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics.linalg import affine_rank, linear_solve, null_space, rank, Solution
from .numerics.lp import EQ, GE, GT, Feasible, LinearConstraint, lp_feasible
from .numerics.rational import Halfspace, combination, dot, fmt_vec, sub, unit, vec


class HullError(ValueError):
    pass


@dataclass(frozen=True)
class PointSet:
    """Ordered points of a common dimension; duplicates are kept."""

    dim: int
    points: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise HullError("dimension must be positive")
        pts = tuple(vec(p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise HullError(f"point {fmt_vec(p)} does not have dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Sequence) -> "PointSet":
        pts = [vec(p) for p in points]
        if not pts:
            raise HullError("cannot infer the dimension of an empty point list")
        return cls(len(pts[0]), tuple(pts))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


def _as_pointset(S, dim: int | None = None) -> PointSet:
    if isinstance(S, PointSet):
        return S
    pts = [vec(p) for p in S]
    if not pts:
        if dim is None:
            raise HullError("empty point list needs an explicit dimension")
        return PointSet(dim, ())
    return PointSet(len(pts[0]), tuple(pts))


# --------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class ConvexComboWitness:
    indices: tuple
    lambdas: tuple

    def point(self, S: PointSet) -> tuple:
        return combination(self.lambdas, [S[i] for i in self.indices])

    def verify(self, q, S: PointSet, max_points: int | None = None) -> bool:
        if len(self.indices) != len(self.lambdas) or len(set(self.indices)) != len(self.indices):
            return False
        if not self.indices or any(l < 0 for l in self.lambdas) or sum(self.lambdas) != 1:
            return False
        if max_points is not None and len(self.indices) > max_points:
            return False
        return self.point(S) == tuple(q)

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "lambdas": fmt_vec(self.lambdas)}


@dataclass(frozen=True)
class ConicWitness:
    indices: tuple
    lambdas: tuple

    def verify(self, q, S: PointSet, max_points: int | None = None) -> bool:
        if len(self.indices) != len(self.lambdas) or len(set(self.indices)) != len(self.indices):
            return False
        if any(l < 0 for l in self.lambdas):
            return False
        if max_points is not None and len(self.indices) > max_points:
            return False
        if not self.indices:
            return all(c == 0 for c in q)
        return combination(self.lambdas, [S[i] for i in self.indices]) == tuple(q)

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "lambdas": fmt_vec(self.lambdas)}


@dataclass(frozen=True)
class FullDimCert:
    """Dual vector showing no normal ``u`` with ``u_j = 1`` is orthogonal to
    the chosen difference rows.

    ``sum_k v[k] * (a[rows[k]] - a[last]) + v[-1] * e_j = 0`` with
    ``v[-1] != 0``; i.e. ``A^T v = 0`` for ``A`` stacking the rows and ``e_j``.
    """

    coordinate: int
    rows: tuple
    v: tuple

    def verify(self, points: Sequence[tuple]) -> bool:
        dim = len(points[0])
        if len(self.v) != len(self.rows) + 1 or self.v[-1] == 0:
            return False
        last = points[-1]
        total = [self.v[-1] * e for e in unit(dim, self.coordinate)]
        for coef, r in zip(self.v, self.rows):
            if not 0 <= r < len(points) - 1:
                return False
            d = sub(points[r], last)
            for k in range(dim):
                total[k] += coef * d[k]
        return all(t == 0 for t in total)

    def to_json(self) -> dict:
        return {"coordinate": self.coordinate, "rows": list(self.rows), "v": fmt_vec(self.v)}


@dataclass(frozen=True)
class InteriorWitness:
    indices: tuple
    lambdas: tuple
    fulldim_certs: tuple

    def verify(self, q, S: PointSet) -> bool:
        d = S.dim
        if len(self.indices) != len(self.lambdas) or len(set(self.indices)) != len(self.indices):
            return False
        if len(self.indices) != min(2 * d, len(S)) or len(self.indices) < d + 1:
            return False
        if any(l <= 0 for l in self.lambdas) or sum(self.lambdas) != 1:
            return False
        pts = [S[i] for i in self.indices]
        if combination(self.lambdas, pts) != tuple(q):
            return False
        if sorted(c.coordinate for c in self.fulldim_certs) != list(range(d)):
            return False
        return all(c.verify(pts) for c in self.fulldim_certs)

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "lambdas": fmt_vec(self.lambdas),
            "fulldim_certs": [c.to_json() for c in self.fulldim_certs],
        }


# --------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Member:
    witness: ConvexComboWitness | ConicWitness


@dataclass(frozen=True)
class NotMember:
    """``halfspace`` contains every point of S and excludes q."""

    halfspace: Halfspace


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class Interior:
    witness: InteriorWitness


@dataclass(frozen=True)
class NotInterior:
    """``halfspace`` contains S while q lies on its boundary or outside it.

    ``reason`` is ``"degenerate"`` when the hull is lower dimensional and
    ``"boundary_or_outside"`` otherwise.
    """

    halfspace: Halfspace
    reason: str


@dataclass(frozen=True)
class FullDim:
    certs: tuple


@dataclass(frozen=True)
class Degenerate:
    normal: tuple


# --------------------------------------------------------------------------
# reductions


def affine_reduce(weights: Sequence, points: Sequence[tuple], limit: int) -> tuple[list[int], list[Fraction]]:
    """Carathéodory elimination for convex combinations.

    Repeatedly takes an affine dependence ``mu`` among the active points
    (``sum mu_i a_i = 0``, ``sum mu_i = 0``) and moves along it until a
    weight hits zero.  The represented point and the weight sum are
    unchanged; at most ``limit`` points stay active once they are affinely
    independent.
    """
    return _reduce(weights, [tuple(p) + (Fraction(1),) for p in points], limit)


def conic_reduce(weights: Sequence, vectors: Sequence[tuple], limit: int) -> tuple[list[int], list[Fraction]]:
    """Conic Carathéodory: keep ``sum w_i v_i`` fixed on <= ``limit`` linearly
    independent vectors."""
    return _reduce(weights, [tuple(v) for v in vectors], limit)


def _reduce(weights, columns, limit):
    active = [i for i, w in enumerate(weights) if w != 0]
    w = {i: Fraction(weights[i]) for i in active}
    while True:
        cols = [columns[i] for i in active]
        rows = [list(r) for r in zip(*cols)] if cols else []
        if len(active) <= limit and (not active or rank(rows) == len(active)):
            break
        basis = null_space(rows, len(active))
        if not basis:
            break
        mu = basis[0]
        if not any(m > 0 for m in mu):
            mu = tuple(-m for m in mu)
        t = min(w[i] / m for i, m in zip(active, mu) if m > 0)
        for i, m in zip(active, mu):
            w[i] -= t * m
        active = [i for i in active if w[i] != 0]
    return active, [w[i] for i in active]


def caratheodory_reduce(q, witness: ConvexComboWitness, S) -> ConvexComboWitness:
    """Shrink a convex-combination witness to at most dim+1 points."""
    S = _as_pointset(S)
    q = vec(q)
    if not witness.verify(q, S):
        raise HullError("witness does not reconstruct the query point")
    if len(witness.indices) <= S.dim + 1:
        return witness
    pts = [S[i] for i in witness.indices]
    keep, lams = affine_reduce(witness.lambdas, pts, S.dim + 1)
    out = ConvexComboWitness(tuple(witness.indices[k] for k in keep), tuple(lams))
    assert out.verify(q, S, S.dim + 1)
    return out


# --------------------------------------------------------------------------
# membership


def _membership_rows(q, S: PointSet, convex: bool, strict: bool = False) -> list[LinearConstraint]:
    n, d = len(S), S.dim
    rel = GT if strict else GE
    rows = [LinearConstraint(unit(n, i), 0, rel) for i in range(n)]
    for k in range(d):
        rows.append(LinearConstraint(tuple(p[k] for p in S), q[k], EQ))
    if convex:
        rows.append(LinearConstraint((Fraction(1),) * n, 1, EQ))
    return rows


def conv_membership(q, S) -> Member | NotMember | EmptySet:
    """Decide ``q in conv(S)``.

    Yes-answers carry a witness on at most dim+1 points; no-answers carry a
    halfspace containing S that strictly excludes q, taken from the Farkas
    multipliers of the membership LP.
    """
    S = _as_pointset(S, len(q))
    q = vec(q)
    if len(q) != S.dim:
        raise HullError("query and point set dimensions differ")
    if not len(S):
        return EmptySet()
    res = lp_feasible(_membership_rows(q, S, convex=True), len(S))
    n, d = len(S), S.dim
    if isinstance(res, Feasible):
        idx = tuple(i for i, l in enumerate(res.point) if l != 0)
        w = ConvexComboWitness(idx, tuple(res.point[i] for i in idx))
        return Member(caratheodory_reduce(q, w, S))
    y = res.cert.multipliers
    normal, s = y[n : n + d], y[n + d]
    h = Halfspace.at_most(normal, -s)
    assert all(h.contains(p) for p in S) and not h.contains(q)
    return NotMember(h)


def pos_hull_membership(q, S) -> Member | NotMember:
    """Decide ``q in pos(S)`` with a conic witness on at most dim points."""
    q = vec(q)
    S = _as_pointset(S, len(q))
    if len(q) != S.dim:
        raise HullError("query and point set dimensions differ")
    if all(c == 0 for c in q):
        return Member(ConicWitness((), ()))
    if not len(S):
        return NotMember(Halfspace.at_most(q, 0))
    n, d = len(S), S.dim
    res = lp_feasible(_membership_rows(q, S, convex=False), n)
    if isinstance(res, Feasible):
        keep, lams = conic_reduce(res.point, list(S), d)
        w = ConicWitness(tuple(keep), tuple(lams))
        assert w.verify(q, S, d)
        return Member(w)
    normal = res.cert.multipliers[n : n + d]
    h = Halfspace.at_most(normal, 0)
    assert all(h.contains(p) for p in S) and dot(normal, q) > 0
    return NotMember(h)


def full_dim_certificate(points: Sequence) -> FullDim | Degenerate:
    """Decide whether the points span an affine hyperplane-free set.

    ``Degenerate(u)`` gives a nonzero ``u`` orthogonal to every difference
    ``a_i - a_last``.  ``FullDim`` gives, for every coordinate ``j``, the
    dual vector proving that no such ``u`` with ``u_j = 1`` exists.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise HullError("need at least one point")
    d = len(pts[0])
    last = pts[-1]
    diffs = [sub(p, last) for p in pts[:-1]]
    if rank(diffs) < d if diffs else True:
        basis = null_space(diffs, d) if diffs else [unit(d, 0)]
        return Degenerate(basis[0])
    chosen: list[int] = []
    for i, dv in enumerate(diffs):
        if rank([diffs[k] for k in chosen] + [dv]) > len(chosen):
            chosen.append(i)
        if len(chosen) == d:
            break
    cols = [[diffs[i][r] for i in chosen] for r in range(d)]
    certs = []
    for j in range(d):
        sol = linear_solve(cols, unit(d, j))
        assert isinstance(sol, Solution)
        certs.append(FullDimCert(j, tuple(chosen), tuple(sol.x) + (Fraction(-1),)))
    for c in certs:
        assert c.verify(pts)
    return FullDim(tuple(certs))


def _hyperplane_halfspace(q, S: PointSet) -> Halfspace:
    d = S.dim
    if len(S) == 0:
        u = unit(d, 0)
        return Halfspace.at_most(u, dot(u, q))
    res = full_dim_certificate(list(S))
    assert isinstance(res, Degenerate)
    u = res.normal
    c = dot(u, S[0])
    if dot(u, q) < c:
        u, c = tuple(-a for a in u), -c
    return Halfspace.at_most(u, c)


def _is_interior(q, pts: Sequence[tuple]) -> bool:
    d = len(q)
    if len(pts) < d + 1 or affine_rank(pts) < d:
        return False
    S = PointSet(d, tuple(pts))
    return isinstance(lp_feasible(_membership_rows(q, S, convex=True, strict=True), len(pts)), Feasible)


def interior_membership(q, S) -> Interior | NotInterior:
    """Decide whether q lies in the interior of conv(S).

    q is interior iff the points affinely span R^d and q is a strictly
    positive convex combination of all of them.  The witness is found by
    dropping points one at a time while q stays interior; an
    inclusion-minimal interior set has at most 2d points, and it is padded
    with further points of S up to exactly ``min(2d, |S|)``.
    """
    q = vec(q)
    S = _as_pointset(S, len(q))
    d = S.dim
    if len(q) != d:
        raise HullError("query and point set dimensions differ")
    n = len(S)
    if n < d + 1 or affine_rank(list(S)) < d:
        return NotInterior(_hyperplane_halfspace(q, S), "degenerate")
    res = lp_feasible(_membership_rows(q, S, convex=True, strict=True), n)
    if not isinstance(res, Feasible):
        y = res.cert.multipliers
        normal, s = y[n : n + d], y[n + d]
        h = Halfspace.at_most(normal, -s)
        assert all(h.contains(p) for p in S) and not h.strictly_contains(q)
        return NotInterior(h, "boundary_or_outside")

    keep = list(range(n))
    for i in range(n):
        trial = [k for k in keep if k != i]
        if _is_interior(q, [S[k] for k in trial]):
            keep = trial
    assert len(keep) <= 2 * d, "minimal interior set exceeds the Steinitz bound"
    target = min(2 * d, n)
    for i in range(n):
        if len(keep) >= target:
            break
        if i not in keep:
            keep.append(i)
    keep.sort()
    pts = [S[k] for k in keep]
    sub_set = PointSet(d, tuple(pts))
    strict = lp_feasible(_membership_rows(q, sub_set, convex=True, strict=True), len(pts))
    assert isinstance(strict, Feasible)
    cert = full_dim_certificate(pts)
    assert isinstance(cert, FullDim)
    w = InteriorWitness(tuple(keep), tuple(strict.point), cert.certs)
    assert w.verify(q, S)
    return Interior(w)
