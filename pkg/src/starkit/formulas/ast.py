"""First-order formulas over real polynomial atoms.

Polynomials here use named scalar variables (strings), unlike the
positional :class:`~starkit.numerics.poly.Polynomial`, because formulas
quantify over individual coordinates.  An atom ``Atom(p, rel)`` states
``p rel 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..numerics.rational import Q, fmt

RELATIONS = ("=", "!=", "<=", "<", ">=", ">")
NEGATED = {"=": "!=", "!=": "=", "<=": ">", ">": "<=", "<": ">=", ">=": "<"}
FORALL = "A"
EXISTS = "E"


class FormulaError(ValueError):
    pass


Monomial = tuple  # sorted tuple of (name, exponent) pairs


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    powers = dict(a)
    for v, e in b:
        powers[v] = powers.get(v, 0) + e
    return tuple(sorted(powers.items()))


@dataclass(frozen=True)
class Poly:
    """Sparse polynomial in named variables with rational coefficients."""

    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Monomial, Fraction] = {}
        for mono, c in dict(self.terms).items():
            c = Q(c)
            if c:
                mono = tuple(sorted((str(v), int(e)) for v, e in mono if e))
                clean[mono] = clean.get(mono, Fraction(0)) + c
        object.__setattr__(self, "terms", {m: c for m, c in sorted(clean.items()) if c})

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Q(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    @staticmethod
    def lift(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly.const(x)

    def __add__(self, other):
        other = Poly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.lift(other))

    def __rsub__(self, other):
        return Poly.lift(other) - self

    def __mul__(self, other):
        other = Poly.lift(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    @property
    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def evaluate(self, env: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= env[v] ** e
            total += t
        return total

    def subs(self, mapping: Mapping[str, "Poly | Fraction | int"]) -> "Poly":
        out = Poly.const(0)
        for m, c in self.terms.items():
            t = Poly.const(c)
            for v, e in m:
                t = t * (Poly.lift(mapping[v]) ** e if v in mapping else Poly({((v, e),): 1}))
            out = out + t
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return Poly({tuple((mapping.get(v, v), e) for v, e in m): c for m, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(fmt(c) if not mono else (mono if c == 1 else f"{fmt(c)}*{mono}"))
        return " + ".join(parts)


def variables(*names: str) -> list[Poly]:
    return [Poly.var(n) for n in names]


def vector(name: str, dim: int) -> list[str]:
    """Scalar names ``name_1 .. name_dim`` for a vector variable."""
    return [f"{name}_{k + 1}" for k in range(dim)]


def dot(u: Sequence, v: Sequence) -> Poly:
    total = Poly.const(0)
    for a, b in zip(u, v):
        total = total + Poly.lift(a) * Poly.lift(b)
    return total


# --------------------------------------------------------------------------
# formula nodes


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Bool(Formula):
    value: bool


@dataclass(frozen=True)
class Atom(Formula):
    poly: Poly
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise FormulaError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Quant(Formula):
    kind: str
    vars: tuple
    body: Formula

    def __post_init__(self):
        if self.kind not in (FORALL, EXISTS):
            raise FormulaError(f"unknown quantifier {self.kind!r}")
        if not self.vars:
            raise FormulaError("a quantifier block needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise FormulaError("variable repeated in one quantifier block")


TRUE = Bool(True)
FALSE = Bool(False)


def conj(*args: Formula | Iterable[Formula]) -> Formula:
    flat = _flatten(And, args)
    if any(a == FALSE for a in flat):
        return FALSE
    flat = [a for a in flat if a != TRUE]
    if not flat:
        return TRUE
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: Formula | Iterable[Formula]) -> Formula:
    flat = _flatten(Or, args)
    if any(a == TRUE for a in flat):
        return TRUE
    flat = [a for a in flat if a != FALSE]
    if not flat:
        return FALSE
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def _flatten(cls, args) -> list[Formula]:
    out: list[Formula] = []
    for a in args:
        if isinstance(a, Formula):
            out.extend(a.args if isinstance(a, cls) else [a])
        else:
            out.extend(_flatten(cls, a))
    return out


def forall(names: Sequence[str], body: Formula) -> Formula:
    return Quant(FORALL, tuple(names), body) if names else body


def exists(names: Sequence[str], body: Formula) -> Formula:
    return Quant(EXISTS, tuple(names), body) if names else body


def cmp(lhs, rel: str, rhs=0) -> Atom:
    """Atom for ``lhs rel rhs``."""
    return Atom(Poly.lift(lhs) - Poly.lift(rhs), rel)


def vec_eq(u: Sequence, v: Sequence) -> Formula:
    return conj(cmp(a, "=", b) for a, b in zip(u, v))


def vec_ne(u: Sequence, v: Sequence) -> Formula:
    return disj(cmp(a, "!=", b) for a, b in zip(u, v))


def free_vars(F: Formula) -> set[str]:
    if isinstance(F, Bool):
        return set()
    if isinstance(F, Atom):
        return F.poly.variables
    if isinstance(F, (And, Or)):
        return set().union(*(free_vars(a) for a in F.args))
    if isinstance(F, Not):
        return free_vars(F.arg)
    if isinstance(F, Implies):
        return free_vars(F.lhs) | free_vars(F.rhs)
    if isinstance(F, Quant):
        return free_vars(F.body) - set(F.vars)
    raise FormulaError(f"not a formula node: {F!r}")


def bound_vars(F: Formula) -> list[str]:
    """Bound variables in order of first quantification (pre-order)."""
    out: list[str] = []

    def walk(G):
        if isinstance(G, Quant):
            out.extend(v for v in G.vars if v not in out)
            walk(G.body)
        elif isinstance(G, (And, Or)):
            for a in G.args:
                walk(a)
        elif isinstance(G, Not):
            walk(G.arg)
        elif isinstance(G, Implies):
            walk(G.lhs)
            walk(G.rhs)

    walk(F)
    return out


def rename(F: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename variables everywhere (free and bound alike)."""
    if isinstance(F, Bool):
        return F
    if isinstance(F, Atom):
        return Atom(F.poly.rename(mapping), F.rel)
    if isinstance(F, And):
        return And(tuple(rename(a, mapping) for a in F.args))
    if isinstance(F, Or):
        return Or(tuple(rename(a, mapping) for a in F.args))
    if isinstance(F, Not):
        return Not(rename(F.arg, mapping))
    if isinstance(F, Implies):
        return Implies(rename(F.lhs, mapping), rename(F.rhs, mapping))
    if isinstance(F, Quant):
        return Quant(F.kind, tuple(mapping.get(v, v) for v in F.vars), rename(F.body, mapping))
    raise FormulaError(f"not a formula node: {F!r}")


def size(F: Formula) -> int:
    """Number of nodes."""
    if isinstance(F, (Bool, Atom)):
        return 1
    if isinstance(F, (And, Or)):
        return 1 + sum(size(a) for a in F.args)
    if isinstance(F, Not):
        return 1 + size(F.arg)
    if isinstance(F, Implies):
        return 1 + size(F.lhs) + size(F.rhs)
    return 1 + size(F.body)


def show(F: Formula) -> str:
    """Human-readable rendering with unicode quantifiers."""
    if isinstance(F, Bool):
        return "true" if F.value else "false"
    if isinstance(F, Atom):
        return f"{F.poly} {F.rel} 0"
    if isinstance(F, And):
        return "(" + " & ".join(show(a) for a in F.args) + ")"
    if isinstance(F, Or):
        return "(" + " | ".join(show(a) for a in F.args) + ")"
    if isinstance(F, Not):
        return f"~{show(F.arg)}"
    if isinstance(F, Implies):
        return f"({show(F.lhs)} -> {show(F.rhs)})"
    sym = "∀" if F.kind == FORALL else "∃"
    return f"{sym}{','.join(F.vars)}. {show(F.body)}"
