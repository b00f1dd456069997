"""First-order sentences for the geometric decision problems.

Each :class:`EncodingId` names one template.  ``emit`` instantiates it on
concrete data with exact rational coefficients and returns a closed
formula.  The naive templates quantify the way the definitions read; the
reduced ones use the theorems that bound how many points matter
(Caratheodory, Steinitz, Kirchberger, Helly, Krasnoselskii) or replace an
inner quantifier by linear programming duality.

Finite point sets enter in two ways.  When a template picks ``k`` points of
S and S has at most ``k`` elements, the points of S themselves are used as
constants.  Otherwise each picked point is a variable constrained by the
membership disjunction ``x = s_1 or ... or x = s_n``.  Templates whose
quantifier ranges over all of S (the naive radius and separation forms and
the Helly form) always use membership-constrained variables, so the
quantifier shape of the definition is kept.

Variable names follow ``base_k`` for a coordinate of a single vector and
``base_i_k`` for coordinate ``k`` of the ``i``-th vector of a family, which
lets grid boxes be given per group (see :func:`eval_on_grid`).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from ..hulls import PointSet, _as_pointset
from ..numerics.poly import Polynomial, poly_eval, poly_gradient
from ..numerics.rational import vec
from ..starshape.smooth import SmoothRegion
from .ast import (
    Formula,
    FormulaError,
    Implies,
    Not,
    Poly,
    cmp,
    conj,
    disj,
    dot,
    exists,
    forall,
    vec_eq,
    vec_ne,
    vector,
)


class EncodingId(str, Enum):
    StarNaive = "StarNaive"
    StarKrasnoselskii = "StarKrasnoselskii"
    StarUniversal = "StarUniversal"
    InteriorNaive = "InteriorNaive"
    InteriorExistential = "InteriorExistential"
    ConvMembership = "ConvMembership"
    PosHullMembership = "PosHullMembership"
    SeparationNaive = "SeparationNaive"
    SeparationUniversal = "SeparationUniversal"
    RadiusNaive = "RadiusNaive"
    RadiusHelly = "RadiusHelly"


class EncodingError(FormulaError):
    """The instance does not fit the requested template."""


@dataclass(frozen=True)
class PointQuery:
    """A query point together with a finite point set."""

    point: tuple
    points: PointSet

    def __post_init__(self):
        object.__setattr__(self, "point", vec(self.point))
        object.__setattr__(self, "points", _as_pointset(self.points, len(self.point)))
        if self.points.dim != len(self.point):
            raise EncodingError("query point and point set differ in dimension")


@dataclass(frozen=True)
class PointSetPair:
    A: PointSet
    B: PointSet

    def __post_init__(self):
        A, B = _as_pointset(self.A), _as_pointset(self.B)
        if A.dim != B.dim:
            raise EncodingError("the two point sets differ in dimension")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)


@dataclass(frozen=True)
class RadiusQuery:
    points: PointSet
    r_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "points", _as_pointset(self.points))
        object.__setattr__(self, "r_sq", Fraction(self.r_sq))
        if self.r_sq < 0:
            raise EncodingError("squared radius must be nonnegative")


# --------------------------------------------------------------------------
# helpers


def _vars(names: Sequence[str]) -> list[Poly]:
    return [Poly.var(n) for n in names]


def _family(base: str, count: int, dim: int) -> list[list[str]]:
    return [[f"{base}_{i + 1}_{k + 1}" for k in range(dim)] for i in range(count)]


def _scalars(base: str, count: int) -> list[str]:
    return [f"{base}_{i + 1}" for i in range(count)]


def _flat(groups) -> list[str]:
    return [n for g in groups for n in g]


def _member(x: Sequence[Poly], S: PointSet) -> Formula:
    """``x`` equals one of the points of S."""
    return disj(vec_eq(x, s) for s in S)


def _pick(S: PointSet, count: int, base: str):
    """Points to combine: constants when S is small, else variables.

    Returns (point expressions, variable names, membership condition).
    """
    if len(S) <= count:
        return [[Poly.const(c) for c in s] for s in S], [], conj()
    names = _family(base, count, S.dim)
    pts = [_vars(g) for g in names]
    return pts, _flat(names), conj(_member(x, S) for x in pts)


def _combination(lams: Sequence[Poly], pts: Sequence[Sequence[Poly]], dim: int) -> list[Poly]:
    return [sum((l * x[k] for l, x in zip(lams, pts)), Poly.const(0)) for k in range(dim)]


def _region(instance) -> Polynomial:
    if isinstance(instance, SmoothRegion):
        return instance.f
    if isinstance(instance, Polynomial):
        return instance
    raise EncodingError("star encodings need a smooth region (polynomial f with S = {f >= 0})")


def _f_at(f: Polynomial, x: Sequence[Poly]) -> Poly:
    return Poly.lift(poly_eval(f, list(x)))


def _need(instance, cls, what: str):
    if not isinstance(instance, cls):
        raise EncodingError(f"this encoding needs {what}, got {type(instance).__name__}")
    return instance


# --------------------------------------------------------------------------
# star-shapedness


def _star_naive(f: Polynomial) -> Formula:
    d = f.dim
    q, p, lam = vector("q", d), vector("p", d), "lam"
    Q_, P_, L = _vars(q), _vars(p), Poly.var(lam)
    x = [L * pk + (1 - L) * qk for pk, qk in zip(P_, Q_)]
    body = Implies(
        conj(cmp(_f_at(f, P_), ">=", 0), cmp(L, ">=", 0), cmp(L, "<=", 1)),
        cmp(_f_at(f, x), ">=", 0),
    )
    return exists(q, forall(p + [lam], body))


def _star_krasnoselskii(f: Polynomial) -> Formula:
    d = f.dim
    ps = _family("p", d + 1, d)
    q = vector("q", d)
    Q_ = _vars(q)
    lams = _scalars("lam", d + 1)
    segments = []
    for names, lam in zip(ps, lams):
        P_, L = _vars(names), Poly.var(lam)
        x = [L * pk + (1 - L) * qk for pk, qk in zip(P_, Q_)]
        segments.append(forall([lam], Implies(conj(cmp(L, ">=", 0), cmp(L, "<=", 1)), cmp(_f_at(f, x), ">=", 0))))
    body = Implies(conj(cmp(_f_at(f, _vars(n)), ">=", 0) for n in ps), conj(segments))
    return forall(_flat(ps), exists(q, body))


def _star_universal(f: Polynomial) -> Formula:
    """Every d+1 tangent halfspaces at boundary points share a point.

    By Farkas, ``{x : g_i . (x - z_i) >= 0}`` is empty exactly when some
    ``y >= 0`` has ``sum y_i g_i = 0`` and ``sum y_i g_i . z_i > 0``, so
    nonemptiness is universal in ``y``.
    """
    d = f.dim
    zs = _family("z", d + 1, d)
    ys = _scalars("y", d + 1)
    Z = [_vars(n) for n in zs]
    Y = _vars(ys)
    grad = poly_gradient(f)
    G = [[_f_at(gk, z) for gk in grad] for z in Z]
    parts = [cmp(_f_at(f, z), "!=", 0) for z in Z]
    parts += [cmp(y, "<", 0) for y in Y]
    parts += [cmp(sum((y * g[k] for y, g in zip(Y, G)), Poly.const(0)), "!=", 0) for k in range(d)]
    parts.append(cmp(sum((y * dot(g, z) for y, g, z in zip(Y, G, Z)), Poly.const(0)), "<=", 0))
    return forall(_flat(zs) + ys, disj(parts))


# --------------------------------------------------------------------------
# hull membership


def _conv_membership(inst: PointQuery) -> Formula:
    S, q, d = inst.points, inst.point, inst.points.dim
    pts, names, sel = _pick(S, d + 1, "x")
    lams = _scalars("lam", len(pts))
    L = _vars(lams)
    body = conj(
        sel,
        conj(cmp(l, ">=", 0) for l in L),
        cmp(sum(L, Poly.const(0)), "=", 1),
        vec_eq(_combination(L, pts, d), q),
    )
    return exists(names + lams, body)


def _pos_hull_membership(inst: PointQuery) -> Formula:
    S, q, d = inst.points, inst.point, inst.points.dim
    pts, names, sel = _pick(S, d, "x")
    lams = _scalars("lam", len(pts))
    L = _vars(lams)
    body = conj(sel, conj(cmp(l, ">=", 0) for l in L), vec_eq(_combination(L, pts, d), q))
    return exists(names + lams, body) if names or lams else body


def _interior_common(inst: PointQuery):
    S, q, d = inst.points, inst.point, inst.points.dim
    pts, names, sel = _pick(S, 2 * d, "a")
    lams = _scalars("lam", len(pts))
    L = _vars(lams)
    inside = conj(
        sel,
        conj(cmp(l, ">", 0) for l in L),
        cmp(sum(L, Poly.const(0)), "=", 1),
        vec_eq(_combination(L, pts, d), q),
    )
    return pts, names + lams, inside


def _interior_naive(inst: PointQuery) -> Formula:
    d = inst.points.dim
    pts, names, inside = _interior_common(inst)
    u = vector("u", d)
    U = _vars(u)
    last = pts[-1] if pts else None
    flat = conj(
        vec_ne(U, [0] * d),
        conj(cmp(dot([ak - bk for ak, bk in zip(a, last)], U), "=", 0) for a in pts[:-1]),
    )
    return exists(names, conj(inside, Not(exists(u, flat))))


def _interior_existential(inst: PointQuery) -> Formula:
    """Full dimension via ``e_j`` in the span of the differences, for every j."""
    d = inst.points.dim
    pts, names, inside = _interior_common(inst)
    m = len(pts)
    if m == 0:
        return exists(names, conj(inside, conj()))
    last = pts[-1]
    diffs = [[ak - bk for ak, bk in zip(a, last)] for a in pts[:-1]]
    spans = []
    for j in range(d):
        v = [f"v_{j + 1}_{i + 1}" for i in range(m)]
        V = _vars(v)
        rows = [
            cmp(sum((vi * D[k] for vi, D in zip(V, diffs)), Poly.const(0)) + V[-1] * (1 if k == j else 0), "=", 0)
            for k in range(d)
        ]
        spans.append(exists(v, conj(conj(rows), cmp(V[-1], "!=", 0))))
    return exists(names, conj(inside, conj(spans)))


# --------------------------------------------------------------------------
# separation


def _separation_naive(inst: PointSetPair) -> Formula:
    d = inst.A.dim
    v, a, b = vector("v", d), vector("a", d), vector("b", d)
    V, A_, B_, C = _vars(v), _vars(a), _vars(b), Poly.var("c")
    body = conj(
        vec_ne(V, [0] * d),
        Implies(_member(A_, inst.A), cmp(dot(V, A_), "<", C)),
        Implies(_member(B_, inst.B), cmp(dot(V, B_), ">", C)),
    )
    return exists(v + ["c"], forall(a + b, body))


def _separation_universal(inst: PointSetPair) -> Formula:
    """No convex combination of at most d+2 points of A equals one of B."""
    d = inst.A.dim
    pa, na, sa = _pick(inst.A, d + 2, "a")
    pb, nb, sb = _pick(inst.B, d + 2, "b")
    lams, mus = _scalars("lam", len(pa)), _scalars("mu", len(pb))
    L, M = _vars(lams), _vars(mus)
    hyp = conj(
        sa,
        sb,
        conj(cmp(l, ">=", 0) for l in L),
        conj(cmp(m, ">=", 0) for m in M),
        cmp(sum(L, Poly.const(0)), "=", 1),
        cmp(sum(M, Poly.const(0)), "=", 1),
    )
    return forall(na + nb + lams + mus, Implies(hyp, vec_ne(_combination(L, pa, d), _combination(M, pb, d))))


# --------------------------------------------------------------------------
# radius


def _dist_sq(x: Sequence, c: Sequence) -> Poly:
    return sum(((Poly.lift(xk) - Poly.lift(ck)) ** 2 for xk, ck in zip(x, c)), Poly.const(0))


def _radius_naive(inst: RadiusQuery) -> Formula:
    d = inst.points.dim
    c, x = vector("c", d), vector("x", d)
    C, X = _vars(c), _vars(x)
    body = Implies(_member(X, inst.points), cmp(_dist_sq(X, C), "<=", inst.r_sq))
    return exists(c, forall(x, body))


def _radius_helly(inst: RadiusQuery) -> Formula:
    d = inst.points.dim
    ss = _family("s", d + 1, d)
    x = vector("x", d)
    X = _vars(x)
    S_ = [_vars(n) for n in ss]
    body = Implies(
        conj(_member(s, inst.points) for s in S_),
        exists(x, conj(cmp(_dist_sq(X, s), "<=", inst.r_sq) for s in S_)),
    )
    return forall(_flat(ss), body)


def emit(id: EncodingId | str, instance) -> Formula:
    """Closed sentence for ``id`` instantiated on ``instance``.

    Instance types: :class:`SmoothRegion` (or a bare polynomial) for the
    star encodings, :class:`PointQuery` for hull membership and interior,
    :class:`PointSetPair` for separation, :class:`RadiusQuery` for radius.
    """
    try:
        id = EncodingId(id)
    except ValueError:
        raise EncodingError(f"unknown encoding {id!r}") from None
    E = EncodingId
    if id in (E.StarNaive, E.StarKrasnoselskii, E.StarUniversal):
        f = _region(instance)
        return {E.StarNaive: _star_naive, E.StarKrasnoselskii: _star_krasnoselskii, E.StarUniversal: _star_universal}[id](f)
    if id in (E.ConvMembership, E.PosHullMembership, E.InteriorNaive, E.InteriorExistential):
        inst = _need(instance, PointQuery, "a query point with a point set")
        return {
            E.ConvMembership: _conv_membership,
            E.PosHullMembership: _pos_hull_membership,
            E.InteriorNaive: _interior_naive,
            E.InteriorExistential: _interior_existential,
        }[id](inst)
    if id in (E.SeparationNaive, E.SeparationUniversal):
        inst = _need(instance, PointSetPair, "a pair of point sets")
        return (_separation_naive if id == E.SeparationNaive else _separation_universal)(inst)
    inst = _need(instance, RadiusQuery, "a point set with a squared radius")
    return (_radius_naive if id == E.RadiusNaive else _radius_helly)(inst)
