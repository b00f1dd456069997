from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from starkit.formulas import (
    EXISTS,
    FORALL,
    And,
    EncodingError,
    EncodingId,
    FormulaError,
    Implies,
    Not,
    Or,
    PointQuery,
    PointSetPair,
    Poly,
    Quant,
    RadiusQuery,
    canonical,
    cmp,
    emit,
    eval_on_grid,
    exists,
    forall,
    free_vars,
    grid_values,
    is_prenex,
    parse_solver_text,
    prefix_of,
    prenex_normalize,
    render_solver_text,
)
from starkit.formulas.ast import bound_vars
from starkit.formulas.corpus import corpus
from starkit.formulas.prenex import eliminate_implications, negation_normal_form, rename_apart
from starkit.formulas.smtlib import render_formula
from starkit.starshape import annulus, disk

x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")
CROSS = [(1, 0), (-1, 0), (0, 1), (0, -1)]
E = EncodingId


# -- polynomials and nodes ---------------------------------------------------


def test_poly_arithmetic():
    p = (x + 1) * (x - 1)
    assert p == x**2 - 1
    assert p.evaluate({"x": F(3)}) == 8
    assert p.variables == {"x"}


def test_quantifier_validation():
    with pytest.raises(FormulaError):
        Quant("B", ("x",), cmp(x, ">=", 0))
    with pytest.raises(FormulaError):
        Quant(FORALL, ("x", "x"), cmp(x, ">=", 0))
    with pytest.raises(FormulaError):
        Quant(EXISTS, (), cmp(x, ">=", 0))


def test_free_variables():
    F_ = forall(["x"], cmp(x + y, ">", 0))
    assert free_vars(F_) == {"y"}


# -- prenex ------------------------------------------------------------------


def test_prenex_input_is_a_fixed_point():
    F_ = forall(["x"], exists(["y"], cmp(x + y, "=", 0)))
    res = prenex_normalize(F_)
    assert res.formula == F_ and res.prefix == "AE" and res.alternations == 1


def test_quantifier_pulled_out_of_implication():
    P, Q = cmp(x, ">=", 0), cmp(x + y, "=", 0)
    res = prenex_normalize(forall(["x"], Implies(P, exists(["y"], Q))))
    assert res.prefix == "AE" and res.alternations == 1
    expected = forall(["x"], exists(["y"], Or((cmp(x, "<", 0), Q))))
    assert res.formula == expected


def test_negation_flips_quantifiers():
    res = prenex_normalize(Not(exists(["x"], forall(["y"], cmp(x - y, ">=", 0)))))
    assert res.prefix == "AE"


def test_block_merging_prefers_fewer_blocks():
    # the two independent subformulas can share one existential block
    F_ = And((exists(["x"], cmp(x, ">", 0)), forall(["y"], exists(["z"], cmp(y + z, "=", 0)))))
    assert prenex_normalize(F_).alternations == 1


_atoms = st.builds(
    lambda a, b, rel, c: cmp(a + b, rel, c),
    st.sampled_from([x, y, z, x * y, x**2]),
    st.sampled_from([Poly.const(0), y, z, -x]),
    st.sampled_from(["<", "<=", ">", ">=", "=", "!="]),
    st.integers(-1, 1),
)


def _formulas():
    return st.recursive(
        _atoms,
        lambda sub: st.one_of(
            st.builds(lambda a, b: And((a, b)), sub, sub),
            st.builds(lambda a, b: Or((a, b)), sub, sub),
            st.builds(Not, sub),
            st.builds(Implies, sub, sub),
            st.builds(lambda k, v, b: Quant(k, (v,), b), st.sampled_from([FORALL, EXISTS]), st.sampled_from("xyz"), sub),
        ),
        max_leaves=6,
    )


def _close(F_):
    names = sorted(free_vars(F_))
    return forall(names, F_) if names else F_


@given(_formulas())
def test_prenex_preserves_grid_value(F_):
    F_ = _close(F_)
    res = prenex_normalize(F_)
    assert is_prenex(res.formula) and prefix_of(res.formula) == res.prefix
    box = {"*": (-1, 1)}
    assert eval_on_grid(F_, box, 3) == eval_on_grid(res.formula, box, 3)


@given(_formulas())
def test_normal_forms_preserve_grid_value(F_):
    F_ = _close(F_)
    box = {"*": (-1, 1)}
    v = eval_on_grid(F_, box, 3)
    nnf = negation_normal_form(eliminate_implications(F_))
    assert eval_on_grid(nnf, box, 3) == v
    apart = rename_apart(nnf)
    names = bound_vars(apart)
    assert len(names) == len(set(names))
    assert eval_on_grid(apart, box, 3) == v


def _no_inner_negation(F_) -> bool:
    if isinstance(F_, Not):
        return False
    if isinstance(F_, Implies):
        return False
    if isinstance(F_, (And, Or)):
        return all(_no_inner_negation(a) for a in F_.args)
    if isinstance(F_, Quant):
        return _no_inner_negation(F_.body)
    return True


@given(_formulas())
def test_negation_normal_form_shape(F_):
    assert _no_inner_negation(negation_normal_form(eliminate_implications(F_)))


# -- SMT-LIB -----------------------------------------------------------------


def test_atom_rendering():
    assert render_formula(cmp(x**2 + y**2, "<=", 1)) == "(<= (+ (- 1) (* x x) (* y y)) 0)"


def test_rational_coefficients_and_disequality():
    text = render_formula(cmp(F(-3, 4) * x, "!=", 0))
    assert text == "(distinct (* (- (/ 3 4)) x) 0)"


def test_sentence_layout():
    text = render_solver_text(forall(["x", "y"], cmp(x**2 + y**2, "<=", 1)))
    assert text == (
        "(set-logic NRA)\n"
        "(assert (forall ((v0 Real) (v1 Real)) (<= (+ (- 1) (* v0 v0) (* v1 v1)) 0)))\n"
        "(check-sat)\n"
    )


def test_free_variables_are_refused():
    with pytest.raises(FormulaError):
        render_solver_text(cmp(x, ">=", 0))


def test_rendering_is_deterministic():
    F_ = emit(E.StarUniversal, disk())
    assert render_solver_text(F_) == render_solver_text(F_)


@given(_formulas())
def test_parse_inverts_render(F_):
    F_ = _close(F_)
    text = render_solver_text(F_)
    back = parse_solver_text(text)
    assert back == canonical(F_)
    assert render_solver_text(back) == text


def test_parser_rejects_garbage():
    with pytest.raises(FormulaError):
        parse_solver_text("(assert (>= x")
    with pytest.raises(FormulaError):
        parse_solver_text("(set-logic NRA)\n(check-sat)\n")


# -- grid evaluation ---------------------------------------------------------


def test_grid_values():
    assert grid_values(0, 1, 5) == [0, F(1, 4), F(1, 2), F(3, 4), 1]
    assert grid_values(0, 1, 1) == [F(1, 2)]
    with pytest.raises(ValueError):
        grid_values(0, 1, 0)


@pytest.mark.parametrize("res", [1, 2, 5])
def test_tautology_holds_at_any_resolution(res):
    assert eval_on_grid(forall(["x"], cmp(x**2, ">=", 0)), {"*": (-3, 3)}, res)


def test_convex_membership_on_grid():
    inst = PointQuery((F(1, 4), F(1, 4)), [(0, 0), (1, 0), (0, 1)])
    F_ = emit(E.ConvMembership, inst)
    assert eval_on_grid(F_, {"*": (0, 1)}, 5)
    assert not eval_on_grid(emit(E.ConvMembership, PointQuery((1, 1), [(0, 0), (1, 0), (0, 1)])), {"*": (0, 1)}, 5)


def test_group_prefix_lookup():
    F_ = exists(["lam_1", "lam_2"], cmp(Poly.var("lam_1") + Poly.var("lam_2"), "=", 3))
    assert eval_on_grid(F_, {"*": (0, 1), "lam": (0, 2)}, 5)
    assert not eval_on_grid(F_, {"*": (0, 2), "lam": (0, 1)}, 5)
    assert eval_on_grid(F_, {"*": (0, 1), "lam_1": (1, 2)}, {"*": 5, "lam_1": 3})


def test_annulus_naive_star_is_false_on_grid():
    F_ = emit(E.StarNaive, annulus())
    assert not eval_on_grid(F_, {"*": (-2, 2), "lam": (0, 1)}, {"*": 5, "lam": 3})


# -- encodings ---------------------------------------------------------------


@pytest.mark.parametrize(
    "enc, inst, prefix",
    [
        (E.StarNaive, disk(), "EA"),
        (E.StarKrasnoselskii, disk(), "AEA"),
        (E.StarUniversal, disk(), "A"),
        (E.InteriorNaive, PointQuery((0, 0), CROSS), "EA"),
        (E.InteriorExistential, PointQuery((0, 0), CROSS), "E"),
        (E.ConvMembership, PointQuery((0, 0), CROSS), "E"),
        (E.PosHullMembership, PointQuery((0, 0), CROSS), "E"),
        (E.SeparationNaive, PointSetPair([(0, 0)], [(1, 0)]), "EA"),
        (E.SeparationUniversal, PointSetPair([(0, 0)], [(1, 0)]), "A"),
        (E.RadiusNaive, RadiusQuery([(0, 0), (2, 0)], 1), "EA"),
        (E.RadiusHelly, RadiusQuery([(0, 0), (2, 0)], 1), "AE"),
    ],
)
def test_prefix_shapes(enc, inst, prefix):
    F_ = emit(enc, inst)
    assert not free_vars(F_)
    assert prenex_normalize(F_).prefix == prefix


def test_star_naive_block_sizes():
    res = prenex_normalize(emit(E.StarNaive, disk()))
    (outer, inner) = res.formula, res.formula.body
    assert outer.kind == EXISTS and len(outer.vars) == 2
    assert inner.kind == FORALL and len(inner.vars) == 3


def test_mismatched_instance_is_an_error():
    with pytest.raises(EncodingError):
        emit(E.StarNaive, PointQuery((0, 0), CROSS))
    with pytest.raises(EncodingError):
        emit(E.ConvMembership, disk())
    with pytest.raises(ValueError):
        RadiusQuery([(0, 0)], -1)


def test_encoding_ids_by_name():
    assert emit("StarUniversal", disk()) == emit(E.StarUniversal, disk())


@pytest.mark.parametrize("entry", corpus()[2:8], ids=lambda e: e.name)
def test_small_corpus_entries_agree(entry):
    expected = entry.direct(entry.instance)
    for g in entry.grids:
        F_ = g.formula(entry.instance)
        assert eval_on_grid(F_, g.box, g.resolution) == expected
