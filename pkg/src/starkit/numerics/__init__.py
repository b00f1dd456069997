"""Exact arithmetic, linear algebra, LP feasibility and polynomials."""

from .linalg import NoSolution, Solution, Underdetermined, affine_rank, linear_solve, null_space, rank
from .lp import (
    EQ,
    GE,
    GT,
    FarkasCertificate,
    Feasible,
    Infeasible,
    LinearConstraint,
    LPError,
    Optimal,
    Unbounded,
    lp_feasible,
    lp_maximize,
)
from .poly import DimensionError, Interval, Polynomial, eval_gradient, poly_eval, poly_gradient
from .rational import Halfspace, Q, dot, fmt, fmt_vec, vec

__all__ = [
    "DimensionError", "EQ", "GE", "GT", "FarkasCertificate", "Feasible", "Halfspace", "Infeasible",
    "Interval", "LPError", "Polynomial", "eval_gradient", "poly_eval", "poly_gradient",
    "LinearConstraint", "NoSolution", "Optimal", "Q", "Solution", "Unbounded", "Underdetermined",
    "affine_rank", "dot", "fmt", "fmt_vec", "linear_solve", "lp_feasible", "lp_maximize",
    "null_space", "rank", "vec",
]
