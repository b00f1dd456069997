"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .rational import Q, fmt


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """``sum coeff * x^exps`` over ``dim`` positional variables.

    ``terms`` maps exponent tuples to nonzero coefficients (ints or
    Fractions).  Arithmetic operators build new polynomials.
    """

    dim: int
    terms: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError("polynomial dimension must be positive")
        clean = {}
        for exps, c in dict(self.terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.dim or any(e < 0 for e in exps):
                raise DimensionError(f"bad exponent tuple {exps} for dimension {self.dim}")
            c = Q(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in sorted(clean.items()) if c})

    def __hash__(self):
        return hash((self.dim, tuple(self.terms.items())))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    @classmethod
    def const(cls, dim: int, c) -> "Polynomial":
        return cls(dim, {(0,) * dim: Q(c)})

    @classmethod
    def var(cls, dim: int, i: int) -> "Polynomial":
        return cls(dim, {tuple(int(k == i) for k in range(dim)): 1})

    @classmethod
    def variables(cls, dim: int) -> list["Polynomial"]:
        return [cls.var(dim, i) for i in range(dim)]

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise DimensionError("polynomials live in different dimensions")
            return other
        return Polynomial.const(self.dim, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.const(self.dim, 1)
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __call__(self, x: Sequence):
        return poly_eval(self, x)

    def to_json(self) -> list:
        return [[fmt(c), list(e)] for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, dim: int, data: Sequence) -> "Polynomial":
        return cls(dim, {tuple(e): Q(c) for c, e in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(fmt(c) if not mono else (mono if c == 1 else f"{fmt(c)}*{mono}"))
        return " + ".join(parts)


def poly_eval(f: Polynomial, x: Sequence):
    """Evaluate ``f`` at ``x``.

    Works for any coordinates supporting ``+``, ``*`` and integer powers,
    so Fractions give exact values and :class:`Interval` boxes give
    enclosures.
    """
    if len(x) != f.dim:
        raise DimensionError(f"point has dimension {len(x)}, polynomial has {f.dim}")
    total = None
    for exps, c in f.terms.items():
        term = c
        for xi, e in zip(x, exps):
            if e:
                term = term * (xi ** e)
        total = term if total is None else total + term
    if total is None:
        return Fraction(0)
    return total


def poly_gradient(f: Polynomial) -> list[Polynomial]:
    """Exact partial derivatives, one per coordinate."""
    grads = []
    for i in range(f.dim):
        out = {}
        for exps, c in f.terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                out[tuple(e)] = c * exps[i]
        grads.append(Polynomial(f.dim, out))
    return grads


def eval_gradient(grad: Sequence[Polynomial], x: Sequence) -> tuple:
    return tuple(poly_eval(g, x) for g in grad)


@dataclass(frozen=True)
class Interval:
    """Closed rational interval ``[lo, hi]`` with outward-exact arithmetic."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x)

    @staticmethod
    def _lift(v) -> "Interval":
        return v if isinstance(v, Interval) else Interval(v, v)

    def __add__(self, other):
        o = self._lift(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k == 0:
            return Interval(1, 1)
        if k % 2 == 1 or self.lo >= 0:
            return Interval(self.lo ** k, self.hi ** k)
        if self.hi <= 0:
            return Interval(self.hi ** k, self.lo ** k)
        return Interval(0, max(self.lo ** k, self.hi ** k))

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo
