"""First-order encodings, prenex normalization, SMT-LIB output and a
grid-based evaluator."""

from .ast import (
    EXISTS,
    FALSE,
    FORALL,
    TRUE,
    And,
    Atom,
    Bool,
    Formula,
    FormulaError,
    Implies,
    Not,
    Or,
    Poly,
    Quant,
    cmp,
    conj,
    disj,
    exists,
    forall,
    free_vars,
    show,
)
from .encodings import EncodingError, EncodingId, PointQuery, PointSetPair, RadiusQuery, emit
from .grid import eval_on_grid, grid_values
from .prenex import PrenexResult, is_prenex, prefix_of, prenex_normalize
from .smtlib import canonical, parse_solver_text, render_solver_text

__all__ = [
    "EXISTS", "FALSE", "FORALL", "TRUE", "And", "Atom", "Bool", "EncodingError", "EncodingId",
    "Formula", "FormulaError", "Implies", "Not", "Or", "PointQuery", "PointSetPair", "Poly",
    "PrenexResult", "Quant", "RadiusQuery", "canonical", "cmp", "conj", "disj", "emit",
    "eval_on_grid", "exists", "forall", "free_vars", "grid_values", "is_prenex",
    "parse_solver_text", "prefix_of", "prenex_normalize", "render_solver_text", "show",
]
