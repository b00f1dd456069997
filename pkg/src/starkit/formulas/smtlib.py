"""SMT-LIB 2 text for closed formulas, and a parser for the same subset.

Bound variables are renamed ``v0, v1, ...`` in order of quantification, so
the text depends only on the formula's structure.  Rationals print as
``(/ p q)`` and negative numbers as ``(- n)``; ``!=`` atoms print as
``(distinct p 0)``.
"""

from __future__ import annotations

from fractions import Fraction

from .ast import (
    EXISTS,
    FORALL,
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
    bound_vars,
    free_vars,
    rename,
)

LOGIC = "NRA"
_REL_OUT = {"=": "=", "!=": "distinct", "<=": "<=", "<": "<", ">=": ">=", ">": ">"}
_REL_IN = {v: k for k, v in _REL_OUT.items()}


def canonical(F: Formula) -> Formula:
    """Rename bound variables to ``v0, v1, ...`` in quantification order."""
    return rename(F, {name: f"v{i}" for i, name in enumerate(bound_vars(F))})


def _number(c: Fraction) -> str:
    mag = abs(c)
    text = str(mag.numerator) if mag.denominator == 1 else f"(/ {mag.numerator} {mag.denominator})"
    return f"(- {text})" if c < 0 else text


def render_poly(p: Poly) -> str:
    terms = []
    for mono, c in p.terms.items():
        factors = [v for v, e in mono for _ in range(e)]
        if not factors:
            terms.append(_number(c))
        elif c == 1:
            terms.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
        else:
            terms.append(f"(* {_number(c)} {' '.join(factors)})")
    if not terms:
        return "0"
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def render_formula(F: Formula) -> str:
    if isinstance(F, Bool):
        return "true" if F.value else "false"
    if isinstance(F, Atom):
        return f"({_REL_OUT[F.rel]} {render_poly(F.poly)} 0)"
    if isinstance(F, And):
        return f"(and {' '.join(render_formula(a) for a in F.args)})"
    if isinstance(F, Or):
        return f"(or {' '.join(render_formula(a) for a in F.args)})"
    if isinstance(F, Not):
        return f"(not {render_formula(F.arg)})"
    if isinstance(F, Implies):
        return f"(=> {render_formula(F.lhs)} {render_formula(F.rhs)})"
    if isinstance(F, Quant):
        word = "forall" if F.kind == FORALL else "exists"
        decls = " ".join(f"({v} Real)" for v in F.vars)
        return f"({word} ({decls}) {render_formula(F.body)})"
    raise FormulaError(f"not a formula node: {F!r}")


def render_solver_text(F: Formula) -> str:
    """The sentence as a complete SMT-LIB script (one assert, check-sat)."""
    free = free_vars(F)
    if free:
        raise FormulaError(f"formula has free variables: {', '.join(sorted(free))}")
    body = render_formula(canonical(F))
    return f"(set-logic {LOGIC})\n(assert {body})\n(check-sat)\n"


# --------------------------------------------------------------------------
# parsing


def _tokens(text: str) -> list[str]:
    out: list[str] = []
    for line in text.splitlines():
        line = line.split(";", 1)[0]
        out.extend(line.replace("(", " ( ").replace(")", " ) ").split())
    return out


def _sexprs(tokens: list[str]) -> list:
    stack: list[list] = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise FormulaError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise FormulaError("unbalanced '('")
    return stack[0]


def _term(s) -> Poly:
    if isinstance(s, str):
        try:
            return Poly.const(Fraction(s))
        except ValueError:
            return Poly.var(s)
    if not s:
        raise FormulaError("empty term")
    head, args = s[0], [_term(a) for a in s[1:]]
    if head == "+":
        return sum(args, Poly.const(0))
    if head == "-":
        if len(args) == 1:
            return -args[0]
        out = args[0]
        for a in args[1:]:
            out = out - a
        return out
    if head == "*":
        out = Poly.const(1)
        for a in args:
            out = out * a
        return out
    if head == "/":
        if len(args) != 2 or not args[1].is_constant() or args[1].constant() == 0:
            raise FormulaError("division needs a nonzero constant divisor")
        return args[0] * Poly.const(1 / args[1].constant())
    raise FormulaError(f"unsupported term operator {head!r}")


def _formula(s) -> Formula:
    if isinstance(s, str):
        if s in ("true", "false"):
            return Bool(s == "true")
        raise FormulaError(f"unexpected symbol {s!r} in formula position")
    head = s[0]
    if head in ("forall", "exists"):
        names = []
        for decl in s[1]:
            if len(decl) != 2 or decl[1] != "Real":
                raise FormulaError(f"bad declaration {decl!r}")
            names.append(decl[0])
        return Quant(FORALL if head == "forall" else EXISTS, tuple(names), _formula(s[2]))
    if head == "and":
        return And(tuple(_formula(a) for a in s[1:]))
    if head == "or":
        return Or(tuple(_formula(a) for a in s[1:]))
    if head == "not":
        return Not(_formula(s[1]))
    if head == "=>":
        return Implies(_formula(s[1]), _formula(s[2]))
    if head in _REL_IN and len(s) == 3:
        return Atom(_term(s[1]) - _term(s[2]), _REL_IN[head])
    raise FormulaError(f"unsupported formula head {head!r}")


def parse_solver_text(text: str) -> Formula:
    """Inverse of :func:`render_solver_text` (on the subset it produces)."""
    asserts = []
    for cmd in _sexprs(_tokens(text)):
        if not isinstance(cmd, list) or not cmd:
            raise FormulaError(f"unexpected top-level item {cmd!r}")
        if cmd[0] == "assert":
            asserts.append(_formula(cmd[1]))
        elif cmd[0] not in ("set-logic", "check-sat", "exit", "set-info"):
            raise FormulaError(f"unsupported command {cmd[0]!r}")
    if len(asserts) != 1:
        raise FormulaError(f"expected one assert, found {len(asserts)}")
    return asserts[0]
