"""Command-line front end.

Every command reads an instance file (see :mod:`starkit.instances`),
prints a JSON result document to standard output, and exits with

====  ==========================================================
0     positive verdict (member, interior, separable, star-shaped, fits)
1     negative verdict
2     input error (bad file, wrong instance kind, cap exceeded, ...)
3     an equivalence check failed (Kirchberger or Helly disagreement)
4     unknown (sampling was inconclusive)
5     a certificate failed re-verification; nothing was emitted
====  ==========================================================

Certificates are checked through the library before anything is printed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import instances
from .formulas import (
    EncodingError,
    EncodingId,
    FormulaError,
    PointQuery,
    PointSetPair,
    RadiusQuery,
    emit,
    eval_on_grid,
    prenex_normalize,
    render_solver_text,
)
from .hulls import (
    EmptySet,
    HullError,
    Interior,
    Member,
    PointSet,
    conv_membership,
    interior_membership,
    pos_hull_membership,
)
from .numerics.rational import fmt, fmt_vec
from .rng import SEED_ENV, default_seed
from .separation import NONE, STRICT, WEAK, ExplicitCapError, SeparationError, kirchberger_check, separate
from .starshape.polygon import Kernel, Polygon, PolygonError, krasnoselskii_triples, polygon_kernel
from .starshape.radius import BOTH, DIRECT, HELLY, HellyDisagreement, min_enclosing_ball, radius_at_most
from .starshape.smooth import SmoothRegion, smooth_star_check
from .starshape.verdict import NOT_STAR, STAR
from .suites import SUITES, run_suite

EXIT_YES, EXIT_NO, EXIT_INPUT, EXIT_EQUIV, EXIT_UNKNOWN, EXIT_CERT = 0, 1, 2, 3, 4, 5


class InputError(Exception):
    pass


class CertificateFailure(Exception):
    pass


def _check(ok: bool, what: str) -> None:
    if not ok:
        raise CertificateFailure(what)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {text!r}") from None


def _vector(text: str) -> tuple:
    return tuple(_rational(t) for t in text.split(","))


def _load(path: str):
    return instances.load(path)


def _expect(obj, cls, kind: str):
    if not isinstance(obj, cls):
        raise InputError(f"this command needs a {kind} instance")
    return obj


# --------------------------------------------------------------------------
# commands: each returns (exit code, document body)


def cmd_hull_member(args) -> tuple[int, dict]:
    inst = _load(args.instance)
    if isinstance(inst, PointSet):
        if args.query is None:
            raise InputError("a point_set instance needs --query x,y,...")
        inst = PointQuery(_vector(args.query), inst)
    inst = _expect(inst, PointQuery, "query")
    q, S = inst.point, inst.points
    d = S.dim
    if args.interior:
        res = interior_membership(q, S)
        if isinstance(res, Interior):
            _check(res.witness.verify(q, S), "interior witness")
            return EXIT_YES, {"verdict": "interior", "certificate": res.witness.to_json()}
        h = res.halfspace
        _check(all(h.contains(p) for p in S) and not h.strictly_contains(q), "boundary halfspace")
        return EXIT_NO, {"verdict": "not_interior", "reason": res.reason, "certificate": {"halfspace": h.to_json()}}
    if args.positive:
        res = pos_hull_membership(q, S)
        if isinstance(res, Member):
            _check(res.witness.verify(q, S, d), "conic witness")
            return EXIT_YES, {"verdict": "member", "hull": "positive", "certificate": res.witness.to_json()}
        h = res.halfspace
        _check(all(h.contains(p) for p in S) and not h.contains(q) and h.offset == 0, "separating cone halfspace")
        return EXIT_NO, {"verdict": "not_member", "hull": "positive", "certificate": {"halfspace": h.to_json()}}
    res = conv_membership(q, S)
    if isinstance(res, EmptySet):
        return EXIT_NO, {"verdict": "not_member", "hull": "convex", "reason": "empty point set"}
    if isinstance(res, Member):
        _check(res.witness.verify(q, S, d + 1), "convex combination witness")
        return EXIT_YES, {"verdict": "member", "hull": "convex", "certificate": res.witness.to_json()}
    h = res.halfspace
    _check(all(h.contains(p) for p in S) and not h.contains(q), "separating halfspace")
    return EXIT_NO, {"verdict": "not_member", "hull": "convex", "certificate": {"halfspace": h.to_json()}}


def cmd_separate(args) -> tuple[int, dict]:
    inst = _expect(_load(args.instance), PointSetPair, "point_pair_sets")
    A, B = inst.A, inst.B
    mode = WEAK if args.weak else STRICT
    if args.kirchberger:
        try:
            rep = kirchberger_check(A, B, mode=mode, cap=args.cap)
        except ExplicitCapError as exc:
            raise InputError(str(exc)) from None
        if rep.separation is not None:
            _check(rep.separation.verify(A, B), "separating hyperplane")
        body = {"verdict": "separable" if rep.direct else "not_separable", "kirchberger": rep.to_json()}
        if rep.separation is not None:
            body["certificate"] = rep.separation.to_json()
        if not rep.equivalent:
            return EXIT_EQUIV, body
        return (EXIT_YES if rep.direct else EXIT_NO), body
    res = separate(A, B, strict=(mode == STRICT))
    _check(res.verify(A, B), "separation result")
    body = {"verdict": "separable" if res.kind != NONE else "not_separable", "mode": mode, "certificate": res.to_json()}
    return (EXIT_NO if res.kind == NONE else EXIT_YES), body


def cmd_star(args, seed: int) -> tuple[int, dict]:
    inst = _load(args.instance)
    if isinstance(inst, Polygon):
        k = polygon_kernel(inst)
        if isinstance(k, Kernel):
            p = k.point
            _check(inst.contains(p) and all(h.contains(p) for h in inst.edge_halfspaces()), "kernel point")
            body = {"verdict": STAR, "witness": fmt_vec(p), "kernel": k.to_json()}
        else:
            _check(k.certificate.verify_family(), "empty-kernel certificate")
            body = {"verdict": NOT_STAR, "certificate": k.to_json()}
        if args.grid:
            rep = krasnoselskii_triples(inst, grid_res=args.grid, seed=seed)
            body["krasnoselskii"] = rep.to_json()
            if rep.verdict == "disagree":
                return EXIT_EQUIV, body
        return (EXIT_YES if isinstance(k, Kernel) else EXIT_NO), body
    R = _expect(inst, SmoothRegion, "polygon or smooth_region")
    v = smooth_star_check(R, args.samples, seed=seed)
    if v.kind == NOT_STAR:
        _check(v.certificate.verify(R.f, R.box), "halfspace certificate")
    body = v.to_json()
    body["samples"] = args.samples
    return {STAR: EXIT_YES, NOT_STAR: EXIT_NO}.get(v.kind, EXIT_UNKNOWN), body


def cmd_radius(args) -> tuple[int, dict]:
    inst = _expect(_load(args.instance), PointSet, "point_set")
    r_sq = _rational(args.r_sq)
    if r_sq < 0:
        raise InputError("--r-sq must be nonnegative")
    if not len(inst):
        raise InputError("the point set is empty")
    try:
        fits = radius_at_most(inst, r_sq, args.mode)
    except HellyDisagreement as exc:
        return EXIT_EQUIV, {"verdict": "disagreement", "detail": str(exc)}
    ball = min_enclosing_ball(inst)
    _check(all(ball.contains(p) for p in inst), "enclosing ball")
    if args.mode != HELLY:
        _check(fits == (ball.radius_sq <= r_sq), "radius decision")
    body = {"verdict": "fits" if fits else "does_not_fit", "mode": args.mode, "r_sq": fmt(r_sq), "min_ball": ball.to_json()}
    return (EXIT_YES if fits else EXIT_NO), body


def _parse_box(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"box must be LO,HI, got {text!r}")
    lo, hi = _rational(parts[0]), _rational(parts[1])
    if lo > hi:
        raise InputError(f"empty box {text!r}")
    return lo, hi


def cmd_emit(args) -> tuple[int, dict]:
    try:
        enc = EncodingId(args.encoding)
    except ValueError:
        raise InputError(f"unknown encoding {args.encoding!r}; choose from {', '.join(e.value for e in EncodingId)}") from None
    inst = _load(args.instance)
    if enc in (EncodingId.RadiusNaive, EncodingId.RadiusHelly):
        if args.r_sq is None:
            raise InputError("radius encodings need --r-sq")
        inst = RadiusQuery(_expect(inst, PointSet, "point_set"), _rational(args.r_sq))
    F = emit(enc, inst)
    pre = prenex_normalize(F)
    text = render_solver_text(pre.formula)
    body: dict = {"encoding": enc.value, "prefix": pre.prefix, "alternations": pre.alternations}
    if args.out:
        Path(args.out).write_text(text)
        body["formula_file"] = args.out
    else:
        body["solver_text"] = text
    if args.eval is None:
        return EXIT_YES, body
    parts = args.eval.split(",")
    if len(parts) != 3:
        raise InputError("--eval must be LO,HI,RESOLUTION")
    box = {"*": _parse_box(",".join(parts[:2]))}
    for item in args.box or []:
        name, _, rng = item.partition("=")
        if not rng:
            raise InputError(f"--box must be NAME=LO,HI, got {item!r}")
        box[name] = _parse_box(rng)
    try:
        res = int(parts[2])
    except ValueError:
        raise InputError(f"resolution must be an integer, got {parts[2]!r}") from None
    if res < 1:
        raise InputError("resolution must be at least 1")
    value = eval_on_grid(pre.formula, box, res)
    body["grid"] = {"box": {k: [fmt(lo), fmt(hi)] for k, (lo, hi) in sorted(box.items())}, "resolution": res, "value": value}
    return (EXIT_YES if value else EXIT_NO), body


def cmd_selftest(args, seed: int, timing: bool) -> tuple[int, dict]:
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(args.suite, seed)
    docs = []
    for r in results:
        doc = r.to_json()
        if timing:
            doc["seconds"] = round(r.seconds, 3)
        docs.append(doc)
    ok = all(r.ok for r in results)
    return (EXIT_YES if ok else EXIT_NO), {"verdict": "pass" if ok else "fail", "suites": docs}


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="starkit", description="Exact convex-geometry decisions with certificates.")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the result document")
    sub = p.add_subparsers(dest="command", required=True)

    def seeded(sp):
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default: ${SEED_ENV} or 0)")

    h = sub.add_parser("hull-member", help="convex/positive hull membership or interior membership")
    h.add_argument("instance")
    h.add_argument("--query", help="query point for a point_set instance, e.g. 1/2,0")
    g = h.add_mutually_exclusive_group()
    g.add_argument("--interior", action="store_true", help="decide interior membership")
    g.add_argument("--positive", action="store_true", help="use the positive (conic) hull")

    s = sub.add_parser("separate", help="hyperplane separation of two point sets")
    s.add_argument("instance")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--strict", action="store_true", help="strict separation (default)")
    g.add_argument("--weak", action="store_true", help="weak separation")
    s.add_argument("--kirchberger", action="store_true", help="also compare with the subset criterion")
    s.add_argument("--cap", type=int, default=16, help="largest |A|+|B| for the subset enumeration")

    st = sub.add_parser("star", help="star-shapedness of a polygon or smooth region")
    st.add_argument("instance")
    st.add_argument("--samples", type=int, default=32, help="boundary samples for smooth regions")
    st.add_argument("--grid", type=int, default=0, help="also run the triple scan at this grid resolution")
    seeded(st)

    r = sub.add_parser("radius", help="does the point set fit in a ball of the given squared radius")
    r.add_argument("instance")
    r.add_argument("--r-sq", required=True, help="squared radius, e.g. 5/4")
    r.add_argument("--mode", choices=(DIRECT, HELLY, BOTH), default=DIRECT)

    e = sub.add_parser("emit", help="write a first-order encoding in SMT-LIB")
    e.add_argument("instance")
    e.add_argument("--encoding", required=True, help="one of: " + ", ".join(x.value for x in EncodingId))
    e.add_argument("--out", help="write the .smt2 text here instead of into the result document")
    e.add_argument("--eval", help="grid-evaluate with default box and resolution LO,HI,RES")
    e.add_argument("--box", action="append", help="per-variable or per-group box NAME=LO,HI (repeatable)")
    e.add_argument("--r-sq", help="squared radius for the radius encodings")

    t = sub.add_parser("selftest", help="run a property suite")
    t.add_argument("--suite", default="all", help="all, " + ", ".join(SUITES))
    seeded(t)
    return p


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    seed = args.seed if getattr(args, "seed", None) is not None else None
    doc: dict = {"operation": args.command}
    start = time.perf_counter()
    try:
        if seed is None:
            seed = default_seed()
        params = {k: v for k, v in vars(args).items() if k not in ("command", "timing", "instance") and v not in (None, False)}
        doc["parameters"] = params
        if hasattr(args, "seed"):
            doc["seed"] = seed
        if hasattr(args, "instance"):
            doc["instance"] = args.instance
        if args.command == "hull-member":
            code, body = cmd_hull_member(args)
        elif args.command == "separate":
            code, body = cmd_separate(args)
        elif args.command == "star":
            code, body = cmd_star(args, seed)
        elif args.command == "radius":
            code, body = cmd_radius(args)
        elif args.command == "emit":
            code, body = cmd_emit(args)
        else:
            code, body = cmd_selftest(args, seed, args.timing)
    except CertificateFailure as exc:
        print(f"starkit: certificate failed re-verification: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (
        InputError,
        instances.InstanceError,
        EncodingError,
        FormulaError,
        HullError,
        SeparationError,
        PolygonError,
        ValueError,
        OSError,
    ) as exc:
        print(f"starkit: {exc}", file=sys.stderr)
        doc["error"] = str(exc)
        _emit(doc)
        return EXIT_INPUT
    doc.update(body)
    if args.timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    _emit(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
