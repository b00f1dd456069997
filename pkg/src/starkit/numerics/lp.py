"""Exact linear feasibility with Farkas certificates.

The solver is a two-phase primal simplex with Bland's rule on an
integer-preserving tableau: every entry is an integer and the true tableau
is ``T / D`` where ``D`` is the current basis determinant.  Each pivot is
``(p * row_k - row_k[j] * row_i) // D``, which divides exactly.  This is
considerably faster than a Fraction tableau and never rounds.

Certificates come from the final duals.  For a system of rows
``a_i . x (rel_i) b_i`` a certificate is a multiplier vector ``y`` with
``y_i >= 0`` on inequality rows, ``sum y_i a_i = 0`` and either
``sum y_i b_i > 0`` or ``sum y_i b_i = 0`` with positive weight on a strict
row.  Substituting any point gives ``0 >= positive`` or ``0 > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .rational import Q, dot, fmt, fmt_vec

GE = ">="
GT = ">"
EQ = "="
RELATIONS = (GE, GT, EQ)


class LPError(ValueError):
    pass


@dataclass(frozen=True)
class LinearConstraint:
    """``normal . x (relation) offset`` with relation one of ``>=``, ``>``, ``=``."""

    normal: tuple
    offset: Fraction
    relation: str = GE

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise LPError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "normal", tuple(Q(a) for a in self.normal))
        object.__setattr__(self, "offset", Q(self.offset))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def slack(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def holds(self, x: Sequence) -> bool:
        s = self.slack(x)
        if self.relation == GE:
            return s >= 0
        if self.relation == GT:
            return s > 0
        return s == 0

    def to_json(self) -> dict:
        return {"normal": fmt_vec(self.normal), "offset": fmt(self.offset), "relation": self.relation}


def ge(normal, offset) -> LinearConstraint:
    return LinearConstraint(tuple(normal), offset, GE)


def gt(normal, offset) -> LinearConstraint:
    return LinearConstraint(tuple(normal), offset, GT)


def eq(normal, offset) -> LinearConstraint:
    return LinearConstraint(tuple(normal), offset, EQ)


@dataclass(frozen=True)
class FarkasCertificate:
    multipliers: tuple

    def combine(self, constraints: Sequence[LinearConstraint]) -> tuple[tuple, Fraction, bool]:
        """The combined row ``(sum y a, sum y b, strict?)``."""
        dim = constraints[0].dim if constraints else 0
        normal = [Fraction(0)] * dim
        rhs = Fraction(0)
        strict = False
        for y, c in zip(self.multipliers, constraints):
            if not y:
                continue
            for k, a in enumerate(c.normal):
                normal[k] += y * a
            rhs += y * c.offset
            if c.relation == GT and y > 0:
                strict = True
        return tuple(normal), rhs, strict

    def verify(self, constraints: Sequence[LinearConstraint]) -> bool:
        """True iff the multipliers derive ``0 >= positive`` or ``0 > 0``."""
        if len(self.multipliers) != len(constraints):
            return False
        for y, c in zip(self.multipliers, constraints):
            if c.relation != EQ and y < 0:
                return False
        normal, rhs, strict = self.combine(constraints)
        if any(normal):
            return False
        return rhs > 0 or (rhs == 0 and strict)

    def support(self) -> list[int]:
        return [i for i, y in enumerate(self.multipliers) if y != 0]

    def to_json(self) -> dict:
        return {"multipliers": fmt_vec(self.multipliers)}


@dataclass(frozen=True)
class Feasible:
    point: tuple


@dataclass(frozen=True)
class Infeasible:
    cert: FarkasCertificate


@dataclass(frozen=True)
class Optimal:
    point: tuple
    value: Fraction
    duals: tuple


class Unbounded(LPError):
    pass


# --------------------------------------------------------------------------
# standard-form simplex on an integer tableau


class _Tableau:
    def __init__(self, A: list[list[int]], b: list[int]):
        m, n = len(A), (len(A[0]) if A else 0)
        self.m, self.n = m, n
        self.N = n + m
        self.T = [A[i] + [1 if k == i else 0 for k in range(m)] + [b[i]] for i in range(m)]
        self.D = 1
        self.basis = [n + i for i in range(m)]
        self.obj = [0] * (self.N + 1)

    def pivot(self, i: int, j: int) -> None:
        T, D = self.T, self.D
        row = T[i]
        p = row[j]
        if p < 0:
            row = [-a for a in row]
            T[i] = row
            p = -p
        for k in range(self.m):
            if k == i:
                continue
            rk = T[k]
            f = rk[j]
            if f:
                T[k] = [(p * a - f * c) // D for a, c in zip(rk, row)]
            elif p != D:
                T[k] = [(p * a) // D for a in rk]
        f = self.obj[j]
        if f:
            self.obj = [(p * a - f * c) // D for a, c in zip(self.obj, row)]
        elif p != D:
            self.obj = [(p * a) // D for a in self.obj]
        self.D = p
        self.basis[i] = j

    def run(self, allowed: int) -> bool:
        """Bland's rule over columns ``< allowed``; False if unbounded."""
        N = self.N
        while True:
            obj = self.obj
            j = next((c for c in range(allowed) if obj[c] < 0), None)
            if j is None:
                return True
            best = None
            for i in range(self.m):
                a = self.T[i][j]
                if a > 0:
                    r = self.T[i][N]
                    if best is None:
                        best = (i, r, a)
                        continue
                    _, br, ba = best
                    lhs, rhs = r * ba, br * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                        best = (i, r, a)
            if best is None:
                return False
            self.pivot(best[0], j)

    def values(self) -> list[Fraction]:
        x = [Fraction(0)] * self.N
        for i, bcol in enumerate(self.basis):
            x[bcol] = Fraction(self.T[i][self.N], self.D)
        return x

    def price(self, cost: list[int]) -> None:
        """Objective row for ``cost`` (length N) under the current basis."""
        D = self.D
        obj = [D * c for c in cost] + [0]
        for i, bcol in enumerate(self.basis):
            cb = cost[bcol]
            if cb:
                obj = [o - cb * t for o, t in zip(obj, self.T[i])]
        self.obj = obj

    def duals(self, cost: list[int]) -> list[Fraction]:
        # w_i = c_{a_i} - reduced cost of artificial i
        return [Fraction(cost[self.n + i]) - Fraction(self.obj[self.n + i], self.D) for i in range(self.m)]


def _standard_form(constraints: Sequence[LinearConstraint], dim: int):
    """Map rows ``a.x (>=|=) b`` over free x to ``A y = b, y >= 0``.

    Rows of the form ``k * x_j >= 0`` with ``k > 0`` become sign bounds on
    ``x_j`` instead of tableau rows.
    """
    bound_row: dict[int, int] = {}
    for r, c in enumerate(constraints):
        if c.relation == GE and c.offset == 0:
            nz = [k for k, a in enumerate(c.normal) if a != 0]
            if len(nz) == 1 and c.normal[nz[0]] > 0 and nz[0] not in bound_row:
                bound_row[nz[0]] = r
    bound_rows = set(bound_row.values())
    cols: list[tuple[int, int]] = []  # (variable, sign)
    for k in range(dim):
        cols.append((k, 1))
        if k not in bound_row:
            cols.append((k, -1))
    regular = [r for r in range(len(constraints)) if r not in bound_rows]
    n_slack = sum(1 for r in regular if constraints[r].relation != EQ)
    A: list[list[int]] = []
    b: list[int] = []
    mult: list[int] = []
    s = 0
    for r in regular:
        c = constraints[r]
        L = lcm(c.offset.denominator, *(a.denominator for a in c.normal))
        coeffs = [int(a * L) for a in c.normal]
        rhs = int(c.offset * L)
        sign = -1 if rhs < 0 else 1
        row = [sign * coeffs[k] * sg for k, sg in cols]
        slack = [0] * n_slack
        if c.relation != EQ:
            slack[s] = -sign
            s += 1
        A.append(row + slack)
        b.append(sign * rhs)
        mult.append(sign * L)
    return cols, regular, bound_row, A, b, mult


def _solve(constraints: Sequence[LinearConstraint], dim: int, objective: Sequence | None = None):
    """Phase I (and phase II when ``objective`` is given, maximized).

    Returns ``("infeasible", y)``, ``("feasible", x)`` or
    ``("optimal", x, value, y)``; raises :class:`Unbounded`.
    """
    for c in constraints:
        if c.relation == GT:
            raise LPError("strict rows must be handled by lp_feasible")
    cols, regular, bound_row, A, b, mult = _standard_form(constraints, dim)
    if not regular:
        # only sign bounds; the origin satisfies them
        x = tuple(Fraction(0) for _ in range(dim))
        if objective is None:
            return ("feasible", x)
    tab = _Tableau(A, b) if regular else None

    def unpack(values) -> tuple:
        x = [Fraction(0)] * dim
        for idx, (k, sg) in enumerate(cols):
            if values[idx]:
                x[k] += sg * values[idx]
        return tuple(x)

    def row_multipliers(w: list[Fraction], cost_struct: list[Fraction]) -> tuple:
        y = [Fraction(0)] * len(constraints)
        for i, r in enumerate(regular):
            y[r] = w[i] * mult[i]
        for k, r in bound_row.items():
            acc = sum((y[i] * constraints[i].normal[k] for i in regular), Fraction(0))
            col = cols.index((k, 1))
            y[r] = (cost_struct[col] - acc) / constraints[r].normal[k]
        return tuple(y)

    if tab is not None:
        cost1 = [0] * tab.n + [1] * tab.m
        tab.price(cost1)
        tab.run(tab.N)
        if tab.obj[tab.N] != 0:
            w = tab.duals(cost1)
            return ("infeasible", row_multipliers(w, [Fraction(0)] * len(cols)))
        for i in range(tab.m):
            if tab.basis[i] >= tab.n:
                j = next((c for c in range(tab.n) if tab.T[i][c] != 0), None)
                if j is not None:
                    tab.pivot(i, j)
        if objective is None:
            return ("feasible", unpack(tab.values()))

    # phase II: minimize -objective over structural columns
    obj_q = [Q(o) for o in objective]
    L = lcm(*(o.denominator for o in obj_q)) if obj_q else 1
    cost_struct = [-int(obj_q[k] * L) * sg for k, sg in cols]
    if tab is None:
        if any(c < 0 for c in cost_struct):
            raise Unbounded("objective unbounded")
        x = tuple(Fraction(0) for _ in range(dim))
        return ("optimal", x, Fraction(0), tuple(Fraction(0) for _ in constraints))
    cost2 = cost_struct + [0] * (tab.n - len(cols)) + [0] * tab.m
    tab.price(cost2)
    if not tab.run(tab.n):
        raise Unbounded("objective unbounded")
    x = unpack(tab.values())
    w = [wi / L for wi in tab.duals(cost2)]
    y = row_multipliers(w, [Fraction(c, L) for c in cost_struct])
    value = dot(obj_q, x)
    return ("optimal", x, value, y)


def _check_dims(constraints: Sequence[LinearConstraint], dim: int) -> None:
    if dim < 1:
        raise LPError("dimension must be positive")
    for c in constraints:
        if c.dim != dim:
            raise LPError(f"constraint has dimension {c.dim}, expected {dim}")


def lp_feasible(constraints: Sequence[LinearConstraint], dim: int) -> Feasible | Infeasible:
    """Find a point satisfying every constraint, or a Farkas certificate.

    Strict rows are first relaxed to weak ones.  If the weak solution is not
    strict, the system is re-solved maximizing a common slack ``t <= 1`` on
    the strict rows; ``t* > 0`` yields a strict point and ``t* = 0`` yields
    the certificate from the optimal duals.
    """
    constraints = list(constraints)
    _check_dims(constraints, dim)
    weak = [c if c.relation != GT else LinearConstraint(c.normal, c.offset, GE) for c in constraints]
    res = _solve(weak, dim)
    if res[0] == "infeasible":
        return _certified(constraints, res[1])
    x = res[1]
    if all(c.holds(x) for c in constraints):
        return Feasible(x)

    ext = [
        LinearConstraint(c.normal + (Fraction(-1 if c.relation == GT else 0),), c.offset, GE if c.relation != EQ else EQ)
        for c in constraints
    ]
    zero = (Fraction(0),) * dim
    ext.append(LinearConstraint(zero + (Fraction(1),), 0, GE))
    ext.append(LinearConstraint(zero + (Fraction(-1),), -1, GE))
    _, xt, t, y = _solve(ext, dim + 1, zero + (Fraction(1),))
    if t > 0:
        point = xt[:dim]
        assert all(c.holds(point) for c in constraints), "slack maximization returned a non-strict point"
        return Feasible(point)
    return _certified(constraints, y[: len(constraints)])


def _certified(constraints, multipliers) -> Infeasible:
    cert = FarkasCertificate(tuple(multipliers))
    if not cert.verify(constraints):
        raise AssertionError("internal error: Farkas certificate failed verification")
    return Infeasible(cert)


def lp_maximize(constraints: Sequence[LinearConstraint], objective: Sequence, dim: int) -> Optimal | Infeasible:
    """Maximize ``objective . x`` over weak/equality rows.

    Raises :class:`Unbounded` when the maximum is infinite.
    """
    constraints = list(constraints)
    _check_dims(constraints, dim)
    res = _solve(constraints, dim, objective)
    if res[0] == "infeasible":
        return _certified(constraints, res[1])
    _, x, value, y = res
    return Optimal(x, value, y)
