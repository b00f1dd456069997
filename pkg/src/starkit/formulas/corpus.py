"""Desk-scale regression corpus for the encodings.

Each entry pairs an instance with the encodings that describe the same
property, a grid for every encoding, and the direct geometric decision.
Grids are chosen so the witnesses (or counterexamples) of each quantifier
sit on grid nodes, which makes the grid verdict equal to the real one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..hulls import Interior, Member, conv_membership, interior_membership, pos_hull_membership
from ..separation import STRICT, separate
from ..starshape.radius import radius_at_most
from ..starshape.smooth import annulus, disk, smooth_star_check
from ..starshape.verdict import STAR, UNKNOWN
from .ast import Formula
from .encodings import EncodingId, PointQuery, PointSetPair, RadiusQuery, emit

E = EncodingId
CROSS = [(1, 0), (-1, 0), (0, 1), (0, -1)]


@dataclass(frozen=True)
class GridSpec:
    encoding: EncodingId
    box: dict
    resolution: dict

    def formula(self, instance) -> Formula:
        return emit(self.encoding, instance)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    instance: object
    grids: tuple
    direct: Callable[[object], bool]


def _star(inst) -> bool:
    verdict = smooth_star_check(inst, 32, seed=0)
    if verdict.kind == UNKNOWN:
        raise AssertionError(f"direct star check was inconclusive: {verdict.diagnostic}")
    return verdict.kind == STAR


def _star_grids() -> tuple:
    pts = {"*": (-2, 2), "lam": (0, 1), "y": (0, 1)}
    return (
        GridSpec(E.StarNaive, pts, {"*": 5, "lam": 3}),
        GridSpec(E.StarKrasnoselskii, {"*": (-1, 1), "lam": (0, 1)}, {"*": 3}),
        GridSpec(E.StarUniversal, pts, {"*": 5, "y": 3}),
    )


def _interior_grids() -> tuple:
    return (
        GridSpec(E.InteriorNaive, {"lam": (0, 1), "u": (-1, 1)}, {"lam": 9, "u": 3}),
        GridSpec(E.InteriorExistential, {"lam": (0, 1), "v": (-1, 1)}, {"lam": 9, "v": 5}),
    )


def _separation_grids() -> tuple:
    return (
        GridSpec(E.SeparationNaive, {"v": (-1, 1), "c": (0, 2), "a": (0, 2), "b": (0, 2)}, {"*": 3}),
        GridSpec(E.SeparationUniversal, {"lam": (0, 1), "mu": (0, 1), "a": (0, 2), "b": (0, 2)}, {"*": 3}),
    )


def _radius_grids() -> tuple:
    return (
        GridSpec(E.RadiusNaive, {"c": (0, 2), "x": (0, 2)}, {"c": 5, "x": 3}),
        GridSpec(E.RadiusHelly, {"s": (0, 2), "x": (0, 2)}, {"s": 3, "x": 5}),
    )


def corpus() -> list[CorpusEntry]:
    tri = [(0, 0), (1, 0), (0, 1)]
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    line = [(0, 0), (1, 0), (2, 0), (3, 0)]
    conv_grid = (GridSpec(E.ConvMembership, {"lam": (0, 1), "x": (0, 1)}, {"lam": 5, "x": 2}),)
    pos_grid = (GridSpec(E.PosHullMembership, {"lam": (0, 2), "x": (0, 1)}, {"lam": 3, "x": 2}),)
    is_member = lambda i: isinstance(conv_membership(i.point, i.points), Member)  # noqa: E731
    is_pos = lambda i: isinstance(pos_hull_membership(i.point, i.points), Member)  # noqa: E731
    is_interior = lambda i: isinstance(interior_membership(i.point, i.points), Interior)  # noqa: E731
    strictly = lambda i: separate(i.A, i.B, strict=True).kind == STRICT  # noqa: E731
    fits = lambda i: radius_at_most(i.points, i.r_sq)  # noqa: E731
    quarter = Fraction(1, 4)
    radius_set = [(0, 0), (2, 0), (1, 1)]
    return [
        CorpusEntry("disk", disk(), _star_grids(), _star),
        CorpusEntry("annulus", annulus(), _star_grids(), _star),
        CorpusEntry("conv-triangle-in", PointQuery((quarter, quarter), tri), conv_grid, is_member),
        CorpusEntry("conv-triangle-out", PointQuery((1, 1), tri), conv_grid, is_member),
        CorpusEntry("conv-square-center", PointQuery((Fraction(1, 2), Fraction(1, 2)), square), conv_grid, is_member),
        CorpusEntry("conv-square-out", PointQuery((2, 0), square), conv_grid, is_member),
        CorpusEntry("pos-cone-in", PointQuery((2, 1), [(1, 0), (1, 1)]), pos_grid, is_pos),
        CorpusEntry("pos-cone-out", PointQuery((-1, 0), [(1, 0), (1, 1)]), pos_grid, is_pos),
        CorpusEntry("interior-cross-origin", PointQuery((0, 0), CROSS), _interior_grids(), is_interior),
        CorpusEntry("interior-cross-vertex", PointQuery((1, 0), CROSS), _interior_grids(), is_interior),
        CorpusEntry("interior-collinear", PointQuery((1, 0), line), _interior_grids(), is_interior),
        CorpusEntry("separation-columns", PointSetPair([(0, 0), (0, 1)], [(2, 0), (2, 1)]), _separation_grids(), strictly),
        CorpusEntry("separation-crossing", PointSetPair([(0, 0), (2, 2)], [(0, 2), (2, 0)]), _separation_grids(), strictly),
        CorpusEntry("radius-fits", RadiusQuery(radius_set, 1), _radius_grids(), fits),
        CorpusEntry("radius-too-small", RadiusQuery(radius_set, Fraction(1, 2)), _radius_grids(), fits),
    ]
