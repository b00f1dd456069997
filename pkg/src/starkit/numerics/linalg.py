"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Solution:
    x: tuple


@dataclass(frozen=True)
class NoSolution:
    rank: int


@dataclass(frozen=True)
class Underdetermined:
    """Solution set ``particular + span(null_basis)``."""

    rank: int
    particular: tuple
    null_basis: tuple


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [[Fraction(a) for a in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def null_space(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple]:
    """Basis of ``{u : rows . u = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column, so the first nonzero
    entry is positive.
    """
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        u = [Fraction(0)] * ncols
        u[f] = Fraction(1)
        for r, p in enumerate(pivots):
            u[p] = -m[r][f]
        basis.append(_leading_one(u))
    return basis


def _leading_one(u: list[Fraction]) -> tuple:
    lead = next(a for a in u if a != 0)
    return tuple(a / lead for a in u)


def linear_solve(A: Sequence[Sequence], b: Sequence) -> Solution | NoSolution | Underdetermined:
    """Solve ``A x = b`` exactly.

    Returns the unique solution, ``NoSolution`` for an inconsistent system,
    or ``Underdetermined`` with one particular solution and a null-space
    basis when the solution set has positive dimension.
    """
    if len(A) != len(b):
        raise ValueError(f"matrix has {len(A)} rows but right-hand side has {len(b)} entries")
    if not A:
        raise ValueError("empty system")
    ncols = len(A[0])
    if any(len(r) != ncols for r in A):
        raise ValueError("ragged matrix")
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return NoSolution(rank=len(pivots) - 1)
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = m[r][ncols]
    if len(pivots) == ncols:
        return Solution(tuple(x))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        u = [Fraction(0)] * ncols
        u[f] = Fraction(1)
        for r, p in enumerate(pivots):
            u[p] = -m[r][f]
        basis.append(tuple(u))
    return Underdetermined(rank=len(pivots), particular=tuple(x), null_basis=tuple(basis))


def solve_any(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Some solution of ``A x = b``, or None."""
    res = linear_solve(A, b)
    if isinstance(res, Solution):
        return res.x
    if isinstance(res, Underdetermined):
        return res.particular
    return None


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs) if diffs else 0


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]
