"""Prenex normal form with few quantifier alternations.

The pipeline eliminates implications, pushes negations down to atoms,
renames bound variables apart, and then pulls the quantifiers out.  Once
every bound variable is unique, a quantifier may move past any conjunction
or disjunction, so the only ordering constraint is nesting: a block must
come after every block that encloses it.  Among those orders, a greedy
sweep that keeps pulling blocks of the current kind until none are
available, then switches kind, minimizes the number of alternations.  Both
starting kinds are tried and the shorter prefix wins.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import (
    EXISTS,
    FORALL,
    NEGATED,
    And,
    Atom,
    Bool,
    Formula,
    FormulaError,
    Implies,
    Not,
    Or,
    Quant,
    conj,
    disj,
    free_vars,
)


@dataclass(frozen=True)
class PrenexResult:
    formula: Formula
    prefix: str
    alternations: int

    def to_json(self) -> dict:
        return {"prefix": self.prefix, "alternations": self.alternations}


def eliminate_implications(F: Formula) -> Formula:
    if isinstance(F, (Bool, Atom)):
        return F
    if isinstance(F, And):
        return conj(eliminate_implications(a) for a in F.args)
    if isinstance(F, Or):
        return disj(eliminate_implications(a) for a in F.args)
    if isinstance(F, Not):
        return Not(eliminate_implications(F.arg))
    if isinstance(F, Implies):
        return disj(Not(eliminate_implications(F.lhs)), eliminate_implications(F.rhs))
    if isinstance(F, Quant):
        return Quant(F.kind, F.vars, eliminate_implications(F.body))
    raise FormulaError(f"not a formula node: {F!r}")


def negation_normal_form(F: Formula, negate: bool = False) -> Formula:
    """Push negations to the atoms (implications must already be gone)."""
    if isinstance(F, Bool):
        return Bool(F.value != negate)
    if isinstance(F, Atom):
        return Atom(F.poly, NEGATED[F.rel]) if negate else F
    if isinstance(F, Not):
        return negation_normal_form(F.arg, not negate)
    if isinstance(F, (And, Or)):
        args = [negation_normal_form(a, negate) for a in F.args]
        return conj(args) if isinstance(F, And) != negate else disj(args)
    if isinstance(F, Quant):
        kind = F.kind if not negate else (EXISTS if F.kind == FORALL else FORALL)
        return Quant(kind, F.vars, negation_normal_form(F.body, negate))
    if isinstance(F, Implies):
        return negation_normal_form(eliminate_implications(F), negate)
    raise FormulaError(f"not a formula node: {F!r}")


def rename_apart(F: Formula) -> Formula:
    """Give every quantifier block variables used nowhere else.

    Names already unique are kept; clashes get a ``#k`` suffix.
    """
    taken = set(free_vars(F))

    def fresh(name: str) -> str:
        if name not in taken:
            taken.add(name)
            return name
        k = 1
        while f"{name}#{k}" in taken:
            k += 1
        taken.add(f"{name}#{k}")
        return f"{name}#{k}"

    def walk(G: Formula, env: dict) -> Formula:
        if isinstance(G, Bool):
            return G
        if isinstance(G, Atom):
            return Atom(G.poly.rename(env), G.rel) if env else G
        if isinstance(G, And):
            return And(tuple(walk(a, env) for a in G.args))
        if isinstance(G, Or):
            return Or(tuple(walk(a, env) for a in G.args))
        if isinstance(G, Not):
            return Not(walk(G.arg, env))
        if isinstance(G, Implies):
            return Implies(walk(G.lhs, env), walk(G.rhs, env))
        inner = dict(env)
        names = []
        for v in G.vars:
            inner[v] = fresh(v)
            names.append(inner[v])
        return Quant(G.kind, tuple(names), walk(G.body, inner))

    return walk(F, {})


@dataclass
class _Block:
    kind: str
    vars: tuple
    children: list


def _strip(F: Formula, out: list) -> Formula:
    """Remove quantifiers from an NNF formula, recording the block forest."""
    if isinstance(F, Quant):
        block = _Block(F.kind, F.vars, [])
        out.append(block)
        return _strip(F.body, block.children)
    if isinstance(F, And):
        return conj(_strip(a, out) for a in F.args)
    if isinstance(F, Or):
        return disj(_strip(a, out) for a in F.args)
    return F


def _sweep(roots: list, start: str) -> list[tuple[str, list]]:
    avail = list(roots)
    prefix: list[tuple[str, list]] = []
    kind = start
    while avail:
        names: list = []
        while True:
            now = [b for b in avail if b.kind == kind]
            if not now:
                break
            for b in now:
                avail.remove(b)
                names.extend(b.vars)
                avail.extend(b.children)
        if names:
            prefix.append((kind, names))
        kind = EXISTS if kind == FORALL else FORALL
    return prefix


def prenex_normalize(F: Formula) -> PrenexResult:
    """Logically equivalent prenex formula plus its prefix summary.

    The prefix string has one letter per block (``A`` for a universal
    block, ``E`` for an existential one); alternations = blocks - 1.
    """
    G = rename_apart(negation_normal_form(eliminate_implications(F)))
    roots: list = []
    matrix = _strip(G, roots)
    options = [_sweep(roots, start) for start in (EXISTS, FORALL)]
    options.sort(key=len)
    best = options[0]
    if len(options[1]) == len(best) and best and roots and best[0][0] != roots[0].kind:
        best = options[1]
    out = matrix
    for kind, names in reversed(best):
        out = Quant(kind, tuple(names), out)
    prefix = "".join(kind for kind, _ in best)
    return PrenexResult(out, prefix, max(len(best) - 1, 0))


def is_prenex(F: Formula) -> bool:
    while isinstance(F, Quant):
        F = F.body
    return _quantifier_free(F)


def _quantifier_free(F: Formula) -> bool:
    if isinstance(F, Quant):
        return False
    if isinstance(F, (And, Or)):
        return all(_quantifier_free(a) for a in F.args)
    if isinstance(F, Not):
        return _quantifier_free(F.arg)
    if isinstance(F, Implies):
        return _quantifier_free(F.lhs) and _quantifier_free(F.rhs)
    return True


def prefix_of(F: Formula) -> str:
    """Prefix string of a prenex formula, merging adjacent equal blocks."""
    out = ""
    while isinstance(F, Quant):
        if not out or out[-1] != F.kind:
            out += F.kind
        F = F.body
    return out


__all__ = [
    "PrenexResult",
    "eliminate_implications",
    "negation_normal_form",
    "rename_apart",
    "prenex_normalize",
    "is_prenex",
    "prefix_of",
]
