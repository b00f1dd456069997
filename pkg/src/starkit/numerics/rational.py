"""Exact scalars, vectors and halfspaces.

Scalars are :class:`fractions.Fraction` (always normalized: positive
denominator, lowest terms).  Vectors are plain tuples of Fractions, which
keeps them hashable and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
RVector = tuple  # tuple[Fraction, ...]


def Q(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise ValueError(f"not a rational: {value!r}") from None
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def vec(*coords) -> tuple:
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    return tuple(Q(c) for c in coords)


def zeros(dim: int) -> tuple:
    return (Fraction(0),) * dim


def unit(dim: int, i: int, sign: int = 1) -> tuple:
    return tuple(Fraction(sign if k == i else 0) for k in range(dim))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(s, u: Sequence) -> tuple:
    return tuple(s * a for a in u)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_sq(u: Sequence):
    return dot(u, u)


def lerp(u: Sequence, v: Sequence, t) -> tuple:
    """Point ``u + t (v - u)``."""
    return tuple(a + t * (b - a) for a, b in zip(u, v))


def combination(weights: Iterable, points: Sequence[Sequence]) -> tuple:
    weights = list(weights)
    dim = len(points[0])
    acc = [Fraction(0)] * dim
    for w, p in zip(weights, points):
        if w:
            for k in range(dim):
                acc[k] += w * p[k]
    return tuple(acc)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def fmt(x) -> str:
    """Render a rational as ``"p"`` or ``"p/q"``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(u: Sequence) -> list[str]:
    return [fmt(a) for a in u]


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace ``{p : normal . p >= offset}``."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        if is_zero(self.normal):
            raise ValueError("halfspace normal must be nonzero")

    @classmethod
    def at_most(cls, v: Sequence, c) -> "Halfspace":
        """The halfspace ``{p : v . p <= c}``."""
        return cls(tuple(-a for a in v), -Q(c))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, p: Sequence):
        """Slack ``normal . p - offset`` (nonnegative inside)."""
        return dot(self.normal, p) - self.offset

    def contains(self, p: Sequence) -> bool:
        return self.value(p) >= 0

    def strictly_contains(self, p: Sequence) -> bool:
        return self.value(p) > 0

    def to_json(self) -> dict:
        return {"normal": fmt_vec(self.normal), "offset": fmt(self.offset), "sense": ">="}
