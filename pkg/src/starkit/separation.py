"""Hyperplane separation of finite point sets and Kirchberger subset checks.

A hyperplane ``(v, c)`` separates A from B when ``v.a <= c <= v.b`` for all
``a in A`` and ``b in B`` (strictly: both inequalities strict).  Normals are
bounded by ``|v_j| <= 1`` so everything stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .hulls import ConvexComboWitness, PointSet, _as_pointset
from .numerics.linalg import affine_rank
from .numerics.lp import (
    EQ,
    GE,
    GT,
    FarkasCertificate,
    Feasible,
    LinearConstraint,
    Optimal,
    lp_feasible,
    lp_maximize,
)
from .numerics.rational import dot, fmt, fmt_vec, unit

STRICT = "strict"
WEAK = "weak"
NONE = "none"

DEFAULT_CAP = 16


class SeparationError(ValueError):
    pass


class ExplicitCapError(SeparationError):
    """Raised when a subset enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class SeparationResult:
    kind: str
    normal: tuple | None = None
    offset: Fraction | None = None
    margin: Fraction | None = None
    certificates: tuple = ()

    def verify(self, A: PointSet, B: PointSet) -> bool:
        if self.kind == NONE:
            return self.normal is None and _certificates_hold(self.certificates, A, B)
        v, c = self.normal, self.offset
        if v is None or all(x == 0 for x in v):
            return False
        lo = [c - dot(v, a) for a in A]
        hi = [dot(v, b) - c for b in B]
        if self.kind == STRICT:
            return min(lo + hi) > 0 and self.margin == min(lo + hi)
        return min(lo + hi) >= 0

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.normal is not None:
            out["normal"] = fmt_vec(self.normal)
            out["offset"] = fmt(self.offset)
        if self.margin is not None:
            out["margin"] = fmt(self.margin)
        if self.certificates:
            out["certificates"] = [c.to_json() for c in self.certificates]
        return out


@dataclass(frozen=True)
class Disjoint:
    separator: SeparationResult


@dataclass(frozen=True)
class Intersecting:
    a_witness: ConvexComboWitness
    b_witness: ConvexComboWitness


@dataclass(frozen=True)
class KirchbergerReport:
    mode: str
    direct: bool
    subset: bool
    subset_size: int
    checked: int
    failing_subset: tuple | None = None
    separation: SeparationResult | None = field(default=None, compare=False)

    @property
    def equivalent(self) -> bool:
        return self.direct == self.subset

    def to_json(self) -> dict:
        out = {
            "mode": self.mode,
            "direct_separable": self.direct,
            "subset_separable": self.subset,
            "equivalent": self.equivalent,
            "subset_size": self.subset_size,
            "subsets_checked": self.checked,
        }
        if self.failing_subset is not None:
            out["failing_subset"] = [[side, i] for side, i in self.failing_subset]
        return out


def _check_pair(A, B) -> tuple[PointSet, PointSet]:
    A, B = _as_pointset(A), _as_pointset(B)
    if not len(A) or not len(B):
        raise SeparationError("both point sets must be non-empty")
    if A.dim != B.dim:
        raise SeparationError("point sets have different dimensions")
    return A, B


def _side_rows(A: PointSet, B: PointSet, extra: int, rel: str) -> list[LinearConstraint]:
    """Rows over (v, c, extras...): ``c - v.a [rel] 0`` and ``v.b - c [rel] 0``,
    with a ``-1`` coefficient on the first extra variable when ``extra`` > 0."""
    tail = (Fraction(-1),) + (Fraction(0),) * (extra - 1) if extra else ()
    rows = []
    for a in A:
        rows.append(LinearConstraint(tuple(-x for x in a) + (Fraction(1),) + tail, 0, rel))
    for b in B:
        rows.append(LinearConstraint(tuple(b) + (Fraction(-1),) + tail, 0, rel))
    return rows


def _weak_fixes(d: int):
    for j in range(d):
        for sign in (1, -1):
            yield LinearConstraint(unit(d + 1, j), sign, EQ)


def _certificates_hold(certs: tuple, A, B) -> bool:
    """One certificate refutes the strict system; ``2d`` certificates refute
    the weak system under each normalization ``v_j = +-1``."""
    A, B = _check_pair(A, B)
    d = A.dim
    if len(certs) == 1:
        return certs[0].verify(_side_rows(A, B, 0, GT))
    if len(certs) != 2 * d:
        return False
    base = _side_rows(A, B, 0, GE)
    return all(c.verify(base + [fix]) for c, fix in zip(certs, _weak_fixes(d)))


def _make_result(kind: str, v, c, A, B) -> SeparationResult:
    slack = [c - dot(v, a) for a in A] + [dot(v, b) - c for b in B]
    return SeparationResult(kind, tuple(v), c, min(slack) if kind == STRICT else None)


def separate(A, B, strict: bool = True) -> SeparationResult:
    """Find a separating hyperplane, preferring a strict one.

    The margin LP maximizes ``t`` subject to ``c - v.a >= t``,
    ``v.b - c >= t`` and ``|v_j| <= 1``.  A positive optimum gives a strict
    separator.  Otherwise, in strict mode the strict system is infeasible
    and its Farkas certificate is attached; in weak mode each normalization
    ``v_j = +-1`` is tried in turn, and if none admits a weak separator the
    ``2d`` certificates are attached.
    """
    A, B = _check_pair(A, B)
    d = A.dim
    nv = d + 2
    rows = _side_rows(A, B, 1, GE)
    for j in range(d):
        rows.append(LinearConstraint(unit(nv, j, -1), -1, GE))
        rows.append(LinearConstraint(unit(nv, j), -1, GE))
    best = lp_maximize(rows, unit(nv, d + 1), nv)
    assert isinstance(best, Optimal)
    if best.value > 0:
        res = _make_result(STRICT, best.point[:d], best.point[d], A, B)
        assert res.verify(A, B)
        return res
    if strict:
        sys = _side_rows(A, B, 0, GT)
        ans = lp_feasible(sys, d + 1)
        assert not isinstance(ans, Feasible), "strict system feasible although the margin is zero"
        return SeparationResult(NONE, certificates=(ans.cert,))
    certs: list[FarkasCertificate] = []
    base = _side_rows(A, B, 0, GE)
    for fix in _weak_fixes(d):
        ans = lp_feasible(base + [fix], d + 1)
        if isinstance(ans, Feasible):
            res = _make_result(WEAK, ans.point[:d], ans.point[d], A, B)
            assert res.verify(A, B)
            return res
        certs.append(ans.cert)
    return SeparationResult(NONE, certificates=tuple(certs))


def _intersection_rows(A: PointSet, B: PointSet, rel: str) -> list[LinearConstraint]:
    na, nb, d = len(A), len(B), A.dim
    n = na + nb
    rows = [LinearConstraint(unit(n, i), 0, rel) for i in range(n)]
    rows.append(LinearConstraint((Fraction(1),) * na + (Fraction(0),) * nb, 1, EQ))
    rows.append(LinearConstraint((Fraction(0),) * na + (Fraction(1),) * nb, 1, EQ))
    for k in range(d):
        rows.append(LinearConstraint(tuple(a[k] for a in A) + tuple(-b[k] for b in B), 0, EQ))
    return rows


def hulls_disjoint(A, B) -> Disjoint | Intersecting:
    """Decide whether conv(A) and conv(B) meet.

    A common point comes with both convex combinations; disjointness is
    certified by a strict separator.
    """
    A, B = _check_pair(A, B)
    ans = lp_feasible(_intersection_rows(A, B, GE), len(A) + len(B))
    if isinstance(ans, Feasible):
        lam, mu = ans.point[: len(A)], ans.point[len(A) :]
        ia = tuple(i for i, x in enumerate(lam) if x)
        ib = tuple(i for i, x in enumerate(mu) if x)
        wa = ConvexComboWitness(ia, tuple(lam[i] for i in ia))
        wb = ConvexComboWitness(ib, tuple(mu[i] for i in ib))
        assert wa.point(A) == wb.point(B)
        return Intersecting(wa, wb)
    sep = separate(A, B, strict=True)
    assert sep.kind == STRICT
    return Disjoint(sep)


def weakly_separable_by_relints(A, B) -> bool:
    """Weak separability through relative interiors.

    Two finite sets admit a weak separator iff their points lie in a common
    hyperplane or the relative interiors of their hulls are disjoint.  The
    relative interiors meet exactly when some common point is a convex
    combination with all weights strictly positive on both sides.
    """
    A, B = _check_pair(A, B)
    if affine_rank(list(A) + list(B)) < A.dim:
        return True
    return not isinstance(lp_feasible(_intersection_rows(A, B, GT), len(A) + len(B)), Feasible)


def kirchberger_check(A, B, mode: str = STRICT, cap: int = DEFAULT_CAP) -> KirchbergerReport:
    """Compare direct separability with the finite subset criterion.

    Strict mode checks every ``(d+2)``-subset P of the labelled union for
    disjoint sub-hulls; weak mode checks every ``(2d+2)``-subset with the
    relative-interior criterion.  Subsets are visited in lexicographic order
    over the labelled list (A first, then B) and the first failure stops the
    scan.  When the union is not larger than the subset size, the whole
    configuration is the only subset.
    """
    if mode not in (STRICT, WEAK):
        raise SeparationError(f"unknown separation mode {mode!r}")
    A, B = _check_pair(A, B)
    labelled = [("A", i) for i in range(len(A))] + [("B", i) for i in range(len(B))]
    if len(labelled) > cap:
        raise ExplicitCapError(f"{len(labelled)} points exceed the enumeration cap {cap}")
    d = A.dim
    size = d + 2 if mode == STRICT else 2 * d + 2
    direct_res = separate(A, B, strict=(mode == STRICT))
    direct = direct_res.kind != NONE
    if len(labelled) <= size:
        subsets = [tuple(range(len(labelled)))]
    else:
        subsets = combinations(range(len(labelled)), size)
    checked = 0
    failing = None
    for subset in subsets:
        checked += 1
        pa = [A[labelled[k][1]] for k in subset if labelled[k][0] == "A"]
        pb = [B[labelled[k][1]] for k in subset if labelled[k][0] == "B"]
        if not pa or not pb:
            continue
        sa, sb = PointSet(d, tuple(pa)), PointSet(d, tuple(pb))
        if mode == STRICT:
            ok = isinstance(hulls_disjoint(sa, sb), Disjoint)
        else:
            ok = weakly_separable_by_relints(sa, sb)
        if not ok:
            failing = tuple(labelled[k] for k in subset)
            break
    return KirchbergerReport(mode, direct, failing is None, size, checked, failing, direct_res)

