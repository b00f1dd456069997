"""Seeded, named random streams.

Every consumer asks for ``stream(seed, name)``; the stream is a
:class:`random.Random` seeded with the string ``"starkit:<seed>:<name>"``
(CPython hashes string seeds with SHA-512, so the mapping is stable across
runs and platforms).  Splitting is by name: ``stream(seed, "kirchberger/17")``
is independent of ``stream(seed, "kirchberger/18")`` and neither depends on
how many values any other stream has drawn.  That makes sampled verdicts
reproducible no matter how work is partitioned.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction

SEED_ENV = "STARKIT_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def stream(seed: int, name: str) -> random.Random:
    return random.Random(f"starkit:{seed}:{name}")


def rational(rng: random.Random, bound: int = 10, max_den: int = 10) -> Fraction:
    """Random rational with |numerator| <= bound and denominator in 1..max_den."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def point(rng: random.Random, dim: int, lo: int = -6, hi: int = 6, den: int = 1) -> tuple:
    return tuple(Fraction(rng.randint(lo * den, hi * den), den) for _ in range(dim))
