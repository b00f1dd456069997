"""Acceptance criteria 1-10.

Each criterion runs one property suite with the default seed and checks
both its verdict and its wall-clock limit.  A one-line PASS/FAIL summary is
printed per criterion (visible with ``pytest -v`` or ``-s``, and collected
in the terminal summary).  Run this file directly to get just the summary.
"""

from __future__ import annotations

import time

import pytest

from starkit.rng import default_seed
from starkit.suites import run_suite

CRITERIA = [
    (1, "kirchberger", 60, "Kirchberger subset criterion matches the direct LP, strict and weak"),
    (2, "caratheodory", 30, "membership witnesses use at most d+1 points and match the full LP"),
    (3, "steinitz", 30, "cross-polytope needs all 2d points; random cases match the dual oracle"),
    (4, "helly-radius", 30, "direct radius test matches the (d+1)-subset test"),
    (5, "kernel", 30, "L-shape and comb kernels, certificates and visibility invariants"),
    (6, "smooth", 30, "disk is star-shaped, annulus refuted by three verified halfspaces"),
    (7, "hare-kenelly", 30, "truncations k=1..5 have exact, strictly decreasing kernel areas"),
    (8, "spherical", 30, "ball slides satisfy every postcondition exactly"),
    (9, "formulas", 60, "encodings agree with direct decisions; prefixes, rendering and parsing"),
    (10, "farkas", 60, "LP verdicts match brute force; every refutation verifies"),
]

SUMMARY: list[str] = []


def _line(number: int, name: str, ok: bool, seconds: float, limit: int, detail: str) -> str:
    status = "PASS" if ok else "FAIL"
    return f"criterion {number:>2} [{status}] {name:<13} {seconds:6.2f}s / {limit}s  {detail}"


@pytest.mark.parametrize("number, suite, limit, claim", CRITERIA, ids=[f"{n}-{s}" for n, s, _, _ in CRITERIA])
def test_criterion(number, suite, limit, claim, capsys):
    start = time.perf_counter()
    (result,) = run_suite(suite, default_seed())
    seconds = time.perf_counter() - start
    ok = result.ok and seconds < limit
    detail = f"{result.cases} cases" if result.ok else f"{len(result.failures)} failures, first: {result.failures[0]}"
    line = _line(number, suite, ok, seconds, limit, detail)
    SUMMARY.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert result.ok, f"{claim}: {result.failures[:5]}"
    assert seconds < limit, f"{suite} took {seconds:.1f}s, limit {limit}s"


def main() -> int:
    failed = 0
    for number, suite, limit, _ in CRITERIA:
        start = time.perf_counter()
        (result,) = run_suite(suite, default_seed())
        seconds = time.perf_counter() - start
        ok = result.ok and seconds < limit
        failed += not ok
        print(_line(number, suite, ok, seconds, limit, f"{result.cases} cases"))
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
