"""Instance files: JSON documents with exact rational numbers.

Numbers are integers or strings such as ``"3"``, ``"-1/2"``; floats are
rejected because they are not exact.  Each document has a ``kind``:

``point_set``        ``{"points": [[x, y], ...], "dim"?: d}``
``query``            ``{"points": [...], "query": [x, y], "dim"?: d}``
``point_pair_sets``  ``{"A": [...], "B": [...], "dim"?: d}``
``polygon``          ``{"vertices": [[x, y], ...]}`` (counterclockwise)
``smooth_region``    ``{"dim": d, "terms": [[coef, [e1, .., ed]], ...],
                      "box": [[lo, hi], ...]}`` for ``{x : f(x) >= 0}``

Unknown fields are an error.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .formulas.encodings import PointQuery, PointSetPair
from .hulls import PointSet
from .numerics.poly import Polynomial
from .starshape.polygon import Polygon
from .starshape.smooth import SmoothRegion

KINDS = ("point_set", "query", "point_pair_sets", "polygon", "smooth_region")
_FIELDS = {
    "point_set": {"points"},
    "query": {"points", "query"},
    "point_pair_sets": {"A", "B"},
    "polygon": {"vertices"},
    "smooth_region": {"terms", "box", "dim"},
}
_OPTIONAL = {"point_set": {"dim"}, "query": {"dim"}, "point_pair_sets": {"dim"}, "polygon": set(), "smooth_region": set()}


class InstanceError(ValueError):
    pass


def number(x: Any) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InstanceError(f"inexact or non-numeric value {x!r}; write rationals as strings like \"1/3\"")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"not a rational number: {x!r}") from None
    raise InstanceError(f"not a number: {x!r}")


def _point(p: Any, dim: int | None, what: str) -> tuple:
    if not isinstance(p, list) or not p:
        raise InstanceError(f"{what} must be a nonempty list of numbers")
    out = tuple(number(c) for c in p)
    if dim is not None and len(out) != dim:
        raise InstanceError(f"{what} has dimension {len(out)}, expected {dim}")
    return out


def _points(data: Any, dim: int | None, what: str) -> tuple[tuple, int | None]:
    if not isinstance(data, list):
        raise InstanceError(f"{what} must be a list of points")
    pts = []
    for i, p in enumerate(data):
        q = _point(p, dim, f"{what}[{i}]")
        dim = len(q) if dim is None else dim
        pts.append(q)
    return tuple(pts), dim


def _dim(doc: dict) -> int | None:
    if "dim" not in doc:
        return None
    d = doc["dim"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InstanceError("dim must be a positive integer")
    return d


def from_document(doc: Any):
    """Domain object for a parsed JSON document."""
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InstanceError(f"unknown or missing kind {kind!r}; expected one of {', '.join(KINDS)}")
    extra = set(doc) - {"kind"} - _FIELDS[kind] - _OPTIONAL[kind]
    if extra:
        raise InstanceError(f"unknown field(s) for {kind}: {', '.join(sorted(extra))}")
    missing = _FIELDS[kind] - set(doc)
    if missing:
        raise InstanceError(f"missing field(s) for {kind}: {', '.join(sorted(missing))}")
    dim = _dim(doc)
    try:
        if kind == "point_set":
            pts, dim = _points(doc["points"], dim, "points")
            if dim is None:
                raise InstanceError("an empty point set needs dim")
            return PointSet(dim, pts)
        if kind == "query":
            q = _point(doc["query"], dim, "query")
            pts, _ = _points(doc["points"], len(q), "points")
            return PointQuery(q, PointSet(len(q), pts))
        if kind == "point_pair_sets":
            A, dim = _points(doc["A"], dim, "A")
            B, dim = _points(doc["B"], dim, "B")
            if dim is None:
                raise InstanceError("two empty point sets need dim")
            return PointSetPair(PointSet(dim, A), PointSet(dim, B))
        if kind == "polygon":
            verts, _ = _points(doc["vertices"], 2, "vertices")
            return Polygon(verts)
        terms = doc["terms"]
        if not isinstance(terms, list):
            raise InstanceError("terms must be a list of [coefficient, exponents]")
        parsed = {}
        for t in terms:
            if not (isinstance(t, list) and len(t) == 2 and isinstance(t[1], list) and len(t[1]) == dim):
                raise InstanceError(f"bad term {t!r}")
            if any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in t[1]):
                raise InstanceError(f"exponents must be nonnegative integers in {t!r}")
            exps = tuple(t[1])
            parsed[exps] = parsed.get(exps, Fraction(0)) + number(t[0])
        box, _ = _points(doc["box"], 2, "box")
        if len(box) != dim:
            raise InstanceError(f"box has {len(box)} sides, expected {dim}")
        return SmoothRegion(Polynomial(dim, parsed), box)
    except InstanceError:
        raise
    except (ValueError, TypeError) as exc:
        raise InstanceError(str(exc)) from exc


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def load(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def to_document(obj) -> dict:
    """Inverse of :func:`from_document`."""
    if isinstance(obj, PointQuery):
        return {
            "kind": "query",
            "dim": obj.points.dim,
            "points": [[str(c) for c in p] for p in obj.points],
            "query": [str(c) for c in obj.point],
        }
    if isinstance(obj, PointSetPair):
        return {
            "kind": "point_pair_sets",
            "dim": obj.A.dim,
            "A": [[str(c) for c in p] for p in obj.A],
            "B": [[str(c) for c in p] for p in obj.B],
        }
    if isinstance(obj, PointSet):
        return {"kind": "point_set", "dim": obj.dim, "points": [[str(c) for c in p] for p in obj]}
    if isinstance(obj, Polygon):
        return {"kind": "polygon", "vertices": [[str(c) for c in v] for v in obj.vertices]}
    if isinstance(obj, SmoothRegion):
        return {
            "kind": "smooth_region",
            "dim": obj.dim,
            "terms": [[str(c), list(e)] for e, c in obj.f.terms.items()],
            "box": [[str(lo), str(hi)] for lo, hi in obj.box],
        }
    raise InstanceError(f"no instance format for {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=2, sort_keys=True) + "\n"
