"""Property suites behind ``starkit selftest`` and the acceptance tests.

Each suite takes a seed, draws its instances from named streams of
:mod:`starkit.rng`, checks library results against an independent oracle
or a certificate check, and returns a :class:`SuiteResult` listing every
violation.  Sizes default to the acceptance-test scale.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import rng as rnd
from .formulas import eval_on_grid, parse_solver_text, prenex_normalize, render_solver_text
from .formulas.corpus import corpus
from .formulas.smtlib import canonical
from .hulls import Interior, Member, NotInterior, NotMember, PointSet, conv_membership, interior_membership
from .numerics.lp import EQ, GE, GT, Feasible, LinearConstraint, lp_feasible
from .numerics.rational import combination
from .oracles import (
    brute_force_feasible,
    brute_force_min_ball,
    conv_oracle,
    halfplane_intersection_area,
    interior_oracle,
)
from .separation import STRICT, WEAK, kirchberger_check
from .starshape.polygon import (
    EmptyKernel,
    Kernel,
    Polygon,
    boundary_pool,
    comb_polygon,
    grid_points,
    hare_kenelly_truncation,
    krasnoselskii_triples,
    l_shape,
    polygon_kernel,
    sees,
)
from .starshape.radius import DIRECT, helly_radius_sq, min_enclosing_ball, radius_at_most
from .starshape.smooth import annulus, disk, smooth_star_check
from .starshape.spherical import spherical_point
from .starshape.verdict import NOT_STAR, STAR


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "cases": self.cases,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "notes": self.notes,
        }


def _timed(name: str):
    def wrap(fn: Callable[..., SuiteResult]):
        def run(seed: int = 0, **kw) -> SuiteResult:
            start = time.perf_counter()
            res = SuiteResult(name)
            try:
                fn(res, seed, **kw)
            except Exception as exc:  # a crash is a violation, reported not raised
                res.fail(f"exception: {type(exc).__name__}: {exc}")
            res.seconds = time.perf_counter() - start
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# --------------------------------------------------------------------------
# separation


def random_pair(r, dim: int, max_total: int, spread: int = 4):
    """Two point sets; B is shifted by a random amount so that separable and
    overlapping instances both occur."""
    total = r.randint(2, max_total)
    na = r.randint(1, total - 1)
    shift = r.randint(0, spread)
    A = [rnd.point(r, dim, -3, 3) for _ in range(na)]
    B = [tuple(c + (shift if k == 0 else 0) for k, c in enumerate(rnd.point(r, dim, -3, 3))) for _ in range(total - na)]
    return A, B


@_timed("kirchberger")
def kirchberger_suite(res: SuiteResult, seed: int, planar: int = 200, spatial: int = 50) -> None:
    """Subset verdicts equal direct LP verdicts, strict and weak."""
    cases = [(2, 10, i) for i in range(planar)] + [(3, 9, i) for i in range(spatial)]
    for dim, max_total, i in cases:
        r = rnd.stream(seed, f"kirchberger/{dim}/{i}")
        A, B = random_pair(r, dim, max_total)
        for mode in (STRICT, WEAK):
            rep = kirchberger_check(A, B, mode=mode)
            res.cases += 1
            if not rep.equivalent:
                res.fail(f"d={dim} case {i} {mode}: direct={rep.direct} subset={rep.subset}")
            if rep.direct and rep.separation is not None and not rep.separation.verify(A, B):
                res.fail(f"d={dim} case {i} {mode}: separator does not verify")


# --------------------------------------------------------------------------
# hulls


@_timed("caratheodory")
def caratheodory_suite(res: SuiteResult, seed: int, count: int = 500, enumerate_up_to: int = 10) -> None:
    """Member witnesses use at most d+1 points and rebuild q.

    Verdicts are compared with subset enumeration for ``n <= enumerate_up_to``
    and with the unreduced weight LP beyond that, where enumeration gets
    slow.  Both verdict kinds also carry certificates that are checked.
    """
    for i in range(count):
        r = rnd.stream(seed, f"caratheodory/{i}")
        d = r.choice((2, 3, 4))
        n = r.randint(1, 15)
        S = [rnd.point(r, d, -5, 5) for _ in range(n)]
        if r.random() < 0.5:
            w = [Fraction(r.randint(0, 4)) for _ in range(n)]
            if not any(w):
                w[0] = Fraction(1)
            tot = sum(w)
            q = combination([x / tot for x in w], S)
        else:
            q = rnd.point(r, d, -5, 5, den=2)
        got = conv_membership(q, S)
        want = conv_oracle(q, S) if n <= enumerate_up_to else full_lp_member(q, S)
        res.cases += 1
        if isinstance(got, Member):
            wit = got.witness
            if not want:
                res.fail(f"case {i}: Member but oracle says outside")
            if len(wit.indices) > d + 1 or not wit.verify(q, S, d + 1):
                res.fail(f"case {i}: witness invalid or larger than d+1")
        elif isinstance(got, NotMember):
            h = got.halfspace
            if want:
                res.fail(f"case {i}: NotMember but oracle says inside")
            if not all(h.contains(p) for p in S) or h.contains(q):
                res.fail(f"case {i}: separating halfspace invalid")
        else:
            res.fail(f"case {i}: unexpected result {got!r}")


def full_lp_member(q, S) -> bool:
    """Feasibility of ``sum w_i s_i = q, sum w_i = 1, w >= 0`` over all points."""
    n, d = len(S), len(q)
    rows = [LinearConstraint(tuple(Fraction(1 if j == i else 0) for j in range(n)), Fraction(0)) for i in range(n)]
    rows += [LinearConstraint(tuple(p[k] for p in S), q[k], EQ) for k in range(d)]
    rows.append(LinearConstraint((Fraction(1),) * n, Fraction(1), EQ))
    return isinstance(lp_feasible(rows, n), Feasible)


def cross_polytope(d: int) -> list[tuple]:
    pts = []
    for k in range(d):
        for s in (1, -1):
            pts.append(tuple(Fraction(s if j == k else 0) for j in range(d)))
    return pts


@_timed("steinitz")
def steinitz_suite(res: SuiteResult, seed: int, count: int = 200) -> None:
    """Cross-polytope tightness and random agreement with the facet oracle."""
    for d in (2, 3):
        S = cross_polytope(d)
        origin = (Fraction(0),) * d
        got = interior_membership(origin, S)
        res.cases += 1
        if not isinstance(got, Interior) or len(got.witness.indices) != 2 * d or not got.witness.verify(origin, _ps(S)):
            res.fail(f"cross-polytope d={d}: origin not certified interior with 2d points")
        for drop in range(2 * d):
            rest = S[:drop] + S[drop + 1 :]
            res.cases += 1
            if not isinstance(interior_membership(origin, rest), NotInterior):
                res.fail(f"cross-polytope d={d}: dropping point {drop} kept the origin interior")
    for i in range(count):
        r = rnd.stream(seed, f"steinitz/{i}")
        d = r.choice((2, 3))
        n = r.randint(d + 1, 10)
        S = [rnd.point(r, d, -4, 4) for _ in range(n)]
        if r.random() < 0.7:
            w = [Fraction(r.randint(1, 5)) for _ in range(n)]
            q = combination([x / sum(w) for x in w], S)
        else:
            q = rnd.point(r, d, -4, 4, den=2)
        got = interior_membership(q, S)
        want = interior_oracle(q, S)
        res.cases += 1
        if isinstance(got, Interior) != want:
            res.fail(f"case {i}: library={type(got).__name__} oracle interior={want}")
        if isinstance(got, Interior) and not got.witness.verify(q, _ps(S)):
            res.fail(f"case {i}: interior witness does not verify")
        if isinstance(got, NotInterior):
            h = got.halfspace
            if not all(h.contains(p) for p in S) or h.strictly_contains(q):
                res.fail(f"case {i}: NotInterior halfspace invalid")


def _ps(S) -> PointSet:
    return PointSet(len(S[0]), tuple(S))


# --------------------------------------------------------------------------
# radius


@_timed("helly-radius")
def helly_radius_suite(res: SuiteResult, seed: int, count: int = 100, brute: int = 30) -> None:
    """Direct and Helly-subset radius decisions agree; the first ``brute``
    balls are also compared with support-set enumeration.

    The subset side uses the largest ``(d+1)``-subset radius, so one pass
    over the subsets serves every tested ``r^2``.
    """
    for i in range(count):
        r = rnd.stream(seed, f"helly-radius/{i}")
        d = r.choice((2, 3))
        n = r.randint(1, 12)
        S = [rnd.point(r, d, -5, 5) for _ in range(n)]
        ball = min_enclosing_ball(S)
        helly = helly_radius_sq(S)
        if i < brute:
            ref = brute_force_min_ball(S)
            res.cases += 1
            if ref is None or ref[1] != ball.radius_sq:
                res.fail(f"case {i}: min ball radius^2 {ball.radius_sq} vs brute force {ref and ref[1]}")
        for r_sq in (ball.radius_sq, ball.radius_sq * Fraction(99, 100), ball.radius_sq + Fraction(1, 7), Fraction(r.randint(0, 40))):
            a, b = radius_at_most(S, r_sq, DIRECT), helly <= r_sq
            res.cases += 1
            if a != b:
                res.fail(f"case {i}: r^2={r_sq} direct={a} helly={b}")


# --------------------------------------------------------------------------
# polygons


def kernel_invariants(P: Polygon, res: SuiteResult, label: str, grid: int = 40) -> int:
    """Points inside the kernel see every pool point; points of P outside it
    miss at least one.  Returns the number of outside points checked."""
    kernel = polygon_kernel(P)
    halfs = P.edge_halfspaces()
    pool = boundary_pool(P)
    outside = 0
    for p in grid_points(P, grid):
        in_kernel = isinstance(kernel, Kernel) and all(h.contains(p) for h in halfs)
        sees_all = all(sees(p, t, P) for t in pool)
        res.cases += 1
        if in_kernel and not sees_all:
            res.fail(f"{label}: kernel point {p} misses part of the boundary")
        if not in_kernel:
            outside += 1
            if sees_all:
                res.fail(f"{label}: point {p} outside the kernel sees the whole pool")
    if isinstance(kernel, Kernel):
        for v in kernel.vertices:
            res.cases += 1
            if not all(sees(v, t, P) for t in pool):
                res.fail(f"{label}: kernel vertex {v} misses part of the boundary")
    return outside


@_timed("kernel")
def kernel_suite(res: SuiteResult, seed: int, grid_res: int = 64) -> None:
    """L-shape kernel, comb certificate and viewerless triple, invariants."""
    L = l_shape()
    k = polygon_kernel(L)
    unit = {(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))}
    res.cases += 1
    if not isinstance(k, Kernel) or set(k.vertices) != unit or k.area != 1:
        res.fail(f"L-shape kernel is {k!r}, expected the unit square")
    C = comb_polygon(3)
    kc = polygon_kernel(C)
    res.cases += 1
    if not isinstance(kc, EmptyKernel) or len(kc.edges) != 3 or not kc.certificate.verify_family():
        res.fail("comb kernel is not certified empty by three halfplanes")
    rep = krasnoselskii_triples(C, grid_res=grid_res, seed=seed)
    res.cases += 1
    if rep.viewerless_triple is None or rep.verdict != "agree":
        res.fail(f"comb: no viewerless triple at grid {grid_res} ({rep.verdict})")
    rep_l = krasnoselskii_triples(L, grid_res=grid_res, seed=seed)
    res.cases += 1
    if rep_l.verdict != "agree":
        res.fail(f"L-shape triple scan verdict {rep_l.verdict}")
    outside = kernel_invariants(L, res, "L-shape") + kernel_invariants(C, res, "comb")
    res.notes["outside_points"] = outside
    if outside < 500:
        res.fail(f"only {outside} outside-kernel points checked")


@_timed("hare-kenelly")
def hare_kenelly_suite(res: SuiteResult, seed: int, ks=(1, 2, 3, 4, 5), box_width: int = 8) -> None:
    """Truncations have nonempty kernels with strictly decreasing areas that
    match a vertex-enumeration oracle."""
    areas = []
    for k in ks:
        P = hare_kenelly_truncation(k, box_width)
        ker = polygon_kernel(P)
        res.cases += 1
        if not isinstance(ker, Kernel):
            res.fail(f"k={k}: kernel empty")
            continue
        oracle = halfplane_intersection_area([(h.normal, h.offset) for h in P.edge_halfspaces()])
        if oracle != ker.area:
            res.fail(f"k={k}: area {ker.area} vs oracle {oracle}")
        areas.append(ker.area)
    res.notes["areas"] = [str(a) for a in areas]
    if any(a <= b for a, b in zip(areas, areas[1:])):
        res.fail(f"areas not strictly decreasing: {areas}")


# --------------------------------------------------------------------------
# spherical points and smooth regions


@_timed("spherical")
def spherical_suite(res: SuiteResult, seed: int, count: int = 100) -> None:
    """Ball-slide results satisfy every postcondition, checked exactly."""
    L = l_shape()
    inside = grid_points(L, 9)
    for i in range(count):
        r = rnd.stream(seed, f"spherical/{i}")
        if i % 2 == 0:
            d = r.choice((2, 3))
            S = list({rnd.point(r, d, -5, 5) for _ in range(r.randint(1, 8))})
            y = r.choice(S)
            x = rnd.point(r, d, -6, 6, den=2)
            while x == y:
                x = rnd.point(r, d, -6, 6, den=2)
            target = S
        else:
            y = r.choice(inside)
            x = rnd.point(r, 2, -1, 3, den=4)
            while L.contains(x) and sees(x, y, L):
                x = rnd.point(r, 2, -1, 3, den=4)
            target = L
        out = spherical_point(x, y, target)
        res.cases += 1
        if not out.verify(x, target) or out.halfspace.value(x) >= 0:
            res.fail(f"case {i}: result does not verify")


@_timed("smooth")
def smooth_suite(res: SuiteResult, seed: int, samples: int = 32) -> None:
    """Disk is star-shaped; annulus has a verified three-halfspace certificate."""
    v = smooth_star_check(disk(), samples, seed)
    res.cases += 1
    if v.kind != STAR:
        res.fail(f"disk verdict {v.kind}: {v.diagnostic}")
    R = annulus()
    v = smooth_star_check(R, samples, seed)
    res.cases += 1
    if v.kind != NOT_STAR or len(v.certificate.halfspaces) != 3 or not v.certificate.verify(R.f, R.box):
        res.fail(f"annulus verdict {v.kind}: {v.diagnostic}")
    exact = smooth_star_check(R, samples, seed, extra_points=[(1, 0), (Fraction(-3, 5), Fraction(4, 5)), (Fraction(-3, 5), Fraction(-4, 5))])
    res.cases += 1
    cert = exact.certificate
    if exact.kind != NOT_STAR or not cert.exact or len(cert.halfspaces) != 3 or not cert.verify(R.f):
        res.fail("annulus with exact boundary points: no exact certificate")


# --------------------------------------------------------------------------
# formulas


@_timed("formulas")
def formulas_suite(res: SuiteResult, seed: int) -> None:
    """Encoding pairs agree with each other and the direct decision; prenex
    forms keep the grid value and have the expected prefixes; rendering is
    stable and round-trips."""
    shapes = {
        "StarNaive": "EA",
        "StarKrasnoselskii": "AEA",
        "StarUniversal": "A",
        "InteriorExistential": "E",
        "SeparationUniversal": "A",
        "RadiusNaive": "EA",
    }
    for entry in corpus():
        want = entry.direct(entry.instance)
        for grid in entry.grids:
            F = grid.formula(entry.instance)
            pre = prenex_normalize(F)
            label = f"{entry.name}/{grid.encoding.value}"
            res.cases += 1
            got = eval_on_grid(F, grid.box, grid.resolution)
            if got != want:
                res.fail(f"{label}: grid value {got}, direct decision {want}")
            if eval_on_grid(pre.formula, grid.box, grid.resolution) != got:
                res.fail(f"{label}: prenex form changes the grid value")
            expected = shapes.get(grid.encoding.value)
            if expected is not None and pre.prefix != expected:
                res.fail(f"{label}: prefix {pre.prefix}, expected {expected}")
            text = render_solver_text(pre.formula)
            if render_solver_text(pre.formula) != text:
                res.fail(f"{label}: rendering is not deterministic")
            back = parse_solver_text(text)
            if back != canonical(pre.formula) or render_solver_text(back) != text:
                res.fail(f"{label}: parse does not invert rendering")


# --------------------------------------------------------------------------
# LP kernel


def random_lp(r, dim: int, rows: int) -> list[LinearConstraint]:
    out = []
    for _ in range(rows):
        normal = tuple(Fraction(r.randint(-3, 3)) for _ in range(dim))
        rel = r.choices((GE, GT, EQ), weights=(6, 2, 1))[0]
        out.append(LinearConstraint(normal, Fraction(r.randint(-4, 4)), rel))
    bound = Fraction(r.randint(3, 8))
    for k in range(dim):
        e = tuple(Fraction(1 if j == k else 0) for j in range(dim))
        out.append(LinearConstraint(e, -bound))
        out.append(LinearConstraint(tuple(-c for c in e), -bound))
    return out


@_timed("farkas")
def farkas_suite(res: SuiteResult, seed: int, count: int = 1000) -> None:
    """Feasibility agrees with vertex enumeration; every infeasible verdict
    carries a certificate that checks by substitution."""
    for i in range(count):
        r = rnd.stream(seed, f"farkas/{i}")
        dim = r.randint(1, 3)
        rows = random_lp(r, dim, r.randint(1, 4))
        got = lp_feasible(rows, dim)
        want = brute_force_feasible(rows, dim)
        res.cases += 1
        if isinstance(got, Feasible):
            if not want or not all(c.holds(got.point) for c in rows):
                res.fail(f"case {i}: feasible point invalid or oracle disagrees")
        else:
            if want:
                res.fail(f"case {i}: infeasible but oracle finds a point")
            if not got.cert.verify(rows):
                res.fail(f"case {i}: Farkas certificate does not verify")


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "kirchberger": kirchberger_suite,
    "caratheodory": caratheodory_suite,
    "steinitz": steinitz_suite,
    "helly-radius": helly_radius_suite,
    "kernel": kernel_suite,
    "smooth": smooth_suite,
    "hare-kenelly": hare_kenelly_suite,
    "spherical": spherical_suite,
    "formulas": formulas_suite,
    "farkas": farkas_suite,
}


def run_suite(name: str, seed: int = 0) -> list[SuiteResult]:
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](seed)]
