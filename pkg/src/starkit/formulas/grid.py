"""Grid semantics for quantified formulas.

Every bound variable ranges over a finite grid in a closed box, so ``forall``
becomes a conjunction and ``exists`` a disjunction over the grid values.
This is a desk-scale oracle: the answer is the truth value relative to the
grid, which matches real truth only when witnesses and counterexamples sit
on grid nodes.

Quantified variables are expanded one at a time.  Before each expansion
the body is evaluated in three-valued logic under the partial assignment;
when it is already decided the remaining grid is skipped.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..numerics.rational import Q
from .ast import FORALL, And, Atom, Bool, Formula, FormulaError, Implies, Not, Or, Quant, free_vars


def grid_values(lo, hi, resolution: int) -> list[Fraction]:
    """``resolution`` evenly spaced values from ``lo`` to ``hi`` inclusive
    (a single value is the midpoint)."""
    if resolution < 1:
        raise ValueError("grid resolution must be at least 1")
    lo, hi = Q(lo), Q(hi)
    if lo > hi:
        raise ValueError(f"empty box [{lo}, {hi}]")
    if resolution == 1:
        return [(lo + hi) / 2]
    step = (hi - lo) / (resolution - 1)
    return [lo + i * step for i in range(resolution)]


def _holds(value: Fraction, rel: str) -> bool:
    if rel == "=":
        return value == 0
    if rel == "!=":
        return value != 0
    if rel == "<=":
        return value <= 0
    if rel == "<":
        return value < 0
    if rel == ">=":
        return value >= 0
    return value > 0


class _Evaluator:
    def __init__(self, grids: Mapping[str, list]):
        self.grids = grids
        self.free: dict[int, frozenset] = {}
        self.memo: dict = {}

    def fv(self, F: Formula) -> frozenset:
        key = id(F)
        if key not in self.free:
            self.free[key] = frozenset(free_vars(F))
        return self.free[key]

    def partial(self, F: Formula, env: dict):
        """True, False, or None when undetermined by ``env``."""
        if isinstance(F, Bool):
            return F.value
        if isinstance(F, Atom):
            if not self.fv(F) <= env.keys():
                return None
            return _holds(F.poly.evaluate(env), F.rel)
        if isinstance(F, And):
            seen_none = False
            for a in F.args:
                r = self.partial(a, env)
                if r is False:
                    return False
                seen_none |= r is None
            return None if seen_none else True
        if isinstance(F, Or):
            seen_none = False
            for a in F.args:
                r = self.partial(a, env)
                if r is True:
                    return True
                seen_none |= r is None
            return None if seen_none else False
        if isinstance(F, Not):
            r = self.partial(F.arg, env)
            return None if r is None else not r
        if isinstance(F, Implies):
            lhs = self.partial(F.lhs, env)
            if lhs is False:
                return True
            rhs = self.partial(F.rhs, env)
            if rhs is True:
                return True
            if lhs is True and rhs is False:
                return False
            return None
        if isinstance(F, Quant):
            if not self.fv(F) <= env.keys():
                return None
            return self.full(F, env)
        raise FormulaError(f"not a formula node: {F!r}")

    def full(self, F: Quant, env: dict) -> bool:
        key = (id(F), tuple(sorted((v, env[v]) for v in self.fv(F))))
        if key not in self.memo:
            local = {v: env[v] for v in self.fv(F)}
            self.memo[key] = self.expand(F.kind, list(F.vars), F.body, local)
        return self.memo[key]

    def expand(self, kind: str, names: list, body: Formula, env: dict) -> bool:
        r = self.partial(body, env)
        if r is not None:
            return r
        if not names:
            raise FormulaError("formula has free variables without grid values")
        name, rest = names[0], names[1:]
        want = kind != FORALL
        for value in self.grids[name]:
            env[name] = value
            got = self.expand(kind, rest, body, env)
            if got == want:
                del env[name]
                return want
        del env[name]
        return not want


def eval_on_grid(F: Formula, box: Mapping, resolution: int | Mapping = 5) -> bool:
    """Truth value of the closed formula ``F`` with every bound variable
    ranging over ``resolution`` grid values in its box.

    ``box`` maps variable names, or group prefixes such as ``lam`` for
    ``lam_1, lam_2, ...``, to ``(lo, hi)``; the key ``"*"`` supplies a
    default.  ``resolution`` is a count, or a mapping with the same keys.
    """
    if not isinstance(resolution, Mapping) and resolution < 1:
        raise ValueError("grid resolution must be at least 1")
    if free_vars(F):
        raise FormulaError(f"formula has free variables: {', '.join(sorted(free_vars(F)))}")
    ev_grids: dict[str, list] = {}
    names = _bound(F)
    for name in names:
        bounds = _lookup(box, name)
        if bounds is None:
            raise FormulaError(f"no box given for variable {name!r}")
        if isinstance(resolution, Mapping):
            res = _lookup(resolution, name)
            if res is None:
                raise FormulaError(f"no resolution given for variable {name!r}")
        else:
            res = resolution
        if isinstance(bounds, (list, tuple)) and len(bounds) == 2:
            ev_grids[name] = grid_values(bounds[0], bounds[1], res)
        else:
            raise FormulaError(f"box for {name!r} must be a pair (lo, hi)")
    ev = _Evaluator(ev_grids)
    r = ev.partial(F, {})
    assert r is not None
    return r


def _lookup(table: Mapping, name: str):
    """``table[name]``, else the entry for the group: ``p_2_1`` falls back
    to ``p_2``, then ``p``, then ``"*"``."""
    key = name
    while True:
        if key in table:
            return table[key]
        if "_" not in key:
            return table.get("*")
        key = key.rsplit("_", 1)[0]


def _bound(F: Formula) -> set[str]:
    if isinstance(F, Quant):
        return set(F.vars) | _bound(F.body)
    if isinstance(F, (And, Or)):
        return set().union(*(_bound(a) for a in F.args))
    if isinstance(F, Not):
        return _bound(F.arg)
    if isinstance(F, Implies):
        return _bound(F.lhs) | _bound(F.rhs)
    return set()
