from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from starkit.numerics import (
    EQ,
    GE,
    GT,
    DimensionError,
    Feasible,
    Halfspace,
    Infeasible,
    Interval,
    LinearConstraint,
    LPError,
    NoSolution,
    Optimal,
    Polynomial,
    Solution,
    Underdetermined,
    affine_rank,
    linear_solve,
    lp_feasible,
    lp_maximize,
    null_space,
    poly_eval,
    poly_gradient,
    rank,
)
from starkit.numerics.rational import Q, fmt
from starkit.oracles import brute_force_feasible

from .strategies import rationals

x, y = Polynomial.variables(2)
DISK = 1 - x**2 - y**2
ANNULUS = (x**2 + y**2 - 1) * (4 - x**2 - y**2)


# -- rationals ---------------------------------------------------------------


def test_q_parses_strings_and_rejects_floats():
    assert Q("-3/4") == F(-3, 4)
    assert Q(2) == F(2)
    with pytest.raises((TypeError, ValueError)):
        Q(0.5)


def test_fmt_prints_integers_without_denominator():
    assert fmt(F(4, 2)) == "2"
    assert fmt(F(-1, 3)) == "-1/3"


def test_halfspace_rejects_zero_normal():
    with pytest.raises(ValueError):
        Halfspace((F(0), F(0)), F(1))


# -- linear algebra ----------------------------------------------------------


def test_identity_system():
    assert linear_solve([[1, 0], [0, 1]], [1, 2]) == Solution((F(1), F(2)))


def test_inconsistent_rows():
    assert isinstance(linear_solve([[1, 1], [2, 2]], [1, 3]), NoSolution)


def test_dependent_rows_are_underdetermined():
    res = linear_solve([[1, 1], [2, 2]], [1, 2])
    assert isinstance(res, Underdetermined) and res.rank == 1
    assert sum(res.particular) == 1
    (n,) = res.null_basis
    assert n[0] + n[1] == 0 and any(n)


@given(st.lists(st.lists(rationals(), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(st.lists(st.lists(rationals(), min_size=4, max_size=4), min_size=1, max_size=3))
def test_null_space_vectors_are_annihilated(rows):
    basis = null_space(rows, 4)
    assert len(basis) == 4 - rank(rows)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.lists(st.lists(rationals(), min_size=2, max_size=2), min_size=2, max_size=2), st.lists(rationals(), min_size=2, max_size=2))
def test_solution_satisfies_system(A, b):
    res = linear_solve(A, b)
    if isinstance(res, Solution):
        assert [sum(a * v for a, v in zip(r, res.x)) for r in A] == b
    elif isinstance(res, Underdetermined):
        assert [sum(a * v for a, v in zip(r, res.particular)) for r in A] == b


def test_affine_rank_of_collinear_points():
    assert affine_rank([(0, 0), (1, 1), (3, 3)]) == 1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2


# -- LP ----------------------------------------------------------------------


def test_unit_interval_is_feasible():
    res = lp_feasible([LinearConstraint((1,), 0), LinearConstraint((-1,), -1)], 1)
    assert isinstance(res, Feasible) and 0 <= res.point[0] <= 1


def test_contradiction_has_certificate():
    rows = [LinearConstraint((1,), 1), LinearConstraint((-1,), 0)]
    res = lp_feasible(rows, 1)
    assert isinstance(res, Infeasible)
    assert res.cert.verify(rows)
    y = res.cert.multipliers
    assert y[0] == y[1] > 0


def test_three_directions_summing_to_zero():
    dirs = [(F(1), F(0)), (F(-1, 2), F(13, 15)), (F(-1, 2), F(-13, 15))]
    rows = [LinearConstraint(d, 1) for d in dirs]
    res = lp_feasible(rows, 2)
    assert isinstance(res, Infeasible) and res.cert.verify(rows)
    assert len(set(res.cert.multipliers)) == 1


def test_strict_rows_are_honoured():
    rows = [LinearConstraint((1,), 0, GT), LinearConstraint((-1,), 0, GE)]
    res = lp_feasible(rows, 1)
    assert isinstance(res, Infeasible) and res.cert.verify(rows)


def test_dimension_mismatch_is_an_error():
    with pytest.raises(LPError):
        lp_feasible([LinearConstraint((1, 2), 0)], 1)


def test_maximize_on_triangle():
    rows = [LinearConstraint((1, 0), 0), LinearConstraint((0, 1), 0), LinearConstraint((-1, -1), -1)]
    res = lp_maximize(rows, (2, 1), 2)
    assert isinstance(res, Optimal) and res.value == 2 and res.point == (1, 0)


def test_certificate_rejects_wrong_multipliers():
    rows = [LinearConstraint((1,), 1), LinearConstraint((-1,), 0)]
    cert = lp_feasible(rows, 1).cert
    assert not type(cert)((F(1), F(-1))).verify(rows)
    assert not type(cert)((F(1),)).verify(rows)


_row = st.tuples(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(-4, 4),
    st.sampled_from([GE, GT, EQ]),
)


@given(st.lists(_row, min_size=1, max_size=5))
def test_feasibility_matches_brute_force(drawn):
    box = [LinearConstraint(n, -5) for n in ((1, 0), (-1, 0), (0, 1), (0, -1))]
    rows = [LinearConstraint(n, b, rel) for n, b, rel in drawn if any(n) or rel != EQ] + box
    res = lp_feasible(rows, 2)
    assert isinstance(res, Feasible) == brute_force_feasible(rows, 2)
    if isinstance(res, Feasible):
        assert all(r.holds(res.point) for r in rows)
    else:
        assert res.cert.verify(rows)


# -- polynomials -------------------------------------------------------------


def test_disk_values():
    assert poly_eval(DISK, (0, 0)) == 1
    assert poly_eval(DISK, (1, 0)) == 0


def test_annulus_value_outside():
    assert ANNULUS((3, 0)) == -40


def test_gradient_rules():
    assert poly_gradient(DISK) == [-2 * x, -2 * y]
    assert poly_gradient(Polynomial.const(2, 5)) == [Polynomial.const(2, 0)] * 2


def test_gradient_matches_symbolic_oracle():
    f = x * y + x**3
    sx, sy = sympy.symbols("x y")
    g = [sympy.diff(sx * sy + sx**3, v) for v in (sx, sy)]
    for pt in [(F(1, 2), F(-3)), (F(2), F(5, 7))]:
        ours = [poly_eval(p, pt) for p in poly_gradient(f)]
        assert ours == [F(str(e.subs({sx: pt[0], sy: pt[1]}))) for e in g]


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        poly_eval(DISK, (1, 2, 3))
    with pytest.raises(DimensionError):
        DISK + Polynomial.var(3, 0)


@given(rationals(), rationals())
def test_annulus_matches_sympy_expansion(a, b):
    sx, sy = sympy.symbols("x y")
    expr = sympy.expand((sx**2 + sy**2 - 1) * (4 - sx**2 - sy**2))
    val = expr.subs({sx: sympy.Rational(a.numerator, a.denominator), sy: sympy.Rational(b.numerator, b.denominator)})
    assert ANNULUS((a, b)) == F(str(val))


@given(rationals(), rationals(), rationals(), rationals())
def test_interval_evaluation_encloses_point_values(a, b, c, d):
    lo1, hi1 = sorted((a, b))
    lo2, hi2 = sorted((c, d))
    enc = poly_eval(ANNULUS, (Interval(lo1, hi1), Interval(lo2, hi2)))
    for px in (lo1, hi1, (lo1 + hi1) / 2):
        for py in (lo2, hi2, (lo2 + hi2) / 2):
            assert enc.contains(ANNULUS((px, py)))


def test_polynomial_json_round_trip():
    assert Polynomial.from_json(2, ANNULUS.to_json()) == ANNULUS
