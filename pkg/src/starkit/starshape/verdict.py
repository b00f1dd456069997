"""Supporting halfspaces, empty-intersection certificates and star verdicts."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..numerics.poly import Interval, Polynomial, poly_eval, poly_gradient
from ..numerics.rational import Halfspace, fmt, fmt_vec

STAR = "star_shaped"
NOT_STAR = "not_star_shaped"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SupportingHalfspace:
    """A closed halfspace through a boundary point ``contact``.

    Exact entries have ``contact`` on the boundary and the normal is the
    exact gradient there.  Approximate entries carry ``bracket = (lo, hi)``:
    two points with ``f`` of opposite signs, so a true boundary point lies
    on the segment between them; the normal is the gradient at the
    midpoint ``contact``.
    """

    contact: tuple
    halfspace: Halfspace
    bracket: tuple | None = None

    @property
    def exact(self) -> bool:
        return self.bracket is None

    def to_json(self) -> dict:
        out = {"contact": fmt_vec(self.contact), "halfspace": self.halfspace.to_json(), "exact": self.exact}
        if self.bracket is not None:
            out["bracket"] = [fmt_vec(self.bracket[0]), fmt_vec(self.bracket[1])]
        return out


@dataclass(frozen=True)
class HalfspaceCertificate:
    """Nonnegative multipliers proving that a halfspace family has empty
    intersection: ``sum y_i v_i = 0`` and ``sum y_i c_i > 0`` for halfspaces
    ``v_i . p >= c_i``, since adding the rows gives ``0 >= positive``.
    """

    halfspaces: tuple
    multipliers: tuple

    @property
    def exact(self) -> bool:
        return all(h.exact for h in self.halfspaces)

    def combination(self) -> tuple[tuple, Fraction]:
        dim = self.halfspaces[0].halfspace.dim
        normal = [Fraction(0)] * dim
        offset = Fraction(0)
        for y, h in zip(self.multipliers, self.halfspaces):
            for k in range(dim):
                normal[k] += y * h.halfspace.normal[k]
            offset += y * h.halfspace.offset
        return tuple(normal), offset

    def verify_family(self) -> bool:
        """Exact check that the listed halfspaces have empty intersection."""
        if not self.halfspaces or len(self.multipliers) != len(self.halfspaces):
            return False
        if any(y < 0 for y in self.multipliers):
            return False
        normal, offset = self.combination()
        return all(v == 0 for v in normal) and offset > 0

    def verify(self, f: Polynomial | None = None, box=None) -> bool:
        """Check the certificate, re-deriving each halfspace from ``f``.

        With exact contacts the family check is done by substitution.  With
        bracketed contacts the claim is that for every choice of true
        boundary points inside the brackets, the true tangent halfspaces
        have no common point in ``box``; this is shown by bounding
        ``sum y_i grad f(z_i) . (p - z_i)`` above by a negative number with
        rational interval arithmetic over the brackets and the box.  The sum
        is regrouped as ``(sum y_i g_i) . p - sum y_i g_i . z_i`` so the
        cancellation in the p-coefficient survives the enclosure.
        """
        if f is None:
            return self.exact and self.verify_family()
        grad = poly_gradient(f)
        for h in self.halfspaces:
            if h.exact:
                if poly_eval(f, h.contact) != 0:
                    return False
                g = tuple(poly_eval(gk, h.contact) for gk in grad)
                if g != tuple(h.halfspace.normal) or sum(a * b for a, b in zip(g, h.contact)) != h.halfspace.offset:
                    return False
            else:
                lo, hi = h.bracket
                if poly_eval(f, lo) * poly_eval(f, hi) >= 0:
                    return False
        if self.exact:
            return self.verify_family()
        if box is None or any(y < 0 for y in self.multipliers):
            return False
        P = [Interval(lo, hi) for lo, hi in box]
        dim = len(P)
        normal = [Interval(0, 0)] * dim
        offset = Interval(0, 0)
        for y, h in zip(self.multipliers, self.halfspaces):
            if h.exact:
                Z = [Interval.point(c) for c in h.contact]
                G = [Interval.point(c) for c in h.halfspace.normal]
            else:
                lo, hi = h.bracket
                Z = [Interval(min(a, b), max(a, b)) for a, b in zip(lo, hi)]
                G = [poly_eval(gk, Z) for gk in grad]
                G = [g if isinstance(g, Interval) else Interval.point(g) for g in G]
            for k in range(dim):
                normal[k] = normal[k] + G[k] * y
                offset = offset + G[k] * Z[k] * y
        total = -offset
        for k in range(dim):
            total = total + normal[k] * P[k]
        return total.hi < 0

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "multipliers": [fmt(y) for y in self.multipliers],
            "halfspaces": [h.to_json() for h in self.halfspaces],
        }


@dataclass(frozen=True)
class StarVerdict:
    kind: str
    witness: tuple | None = None
    certificate: HalfspaceCertificate | None = None
    diagnostic: str = ""

    def to_json(self) -> dict:
        out: dict = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = fmt_vec(self.witness)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        return out
