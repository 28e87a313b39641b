"""
Compiling QlSRN functions and terms into WALT combinators.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from walt_workbench.combinators.encoders import encode_word
from walt_workbench.combinators.schemas import WORD
from walt_workbench.core.config import settings
from walt_workbench.core.errors import NonLinearSafeVariable, NotACanonicalWord, UndefinedEmbedding
from walt_workbench.formulas.types import EagerLolli, Par, arrows, par_n
from walt_workbench.qlsrn.corpus import generate_corpus
from walt_workbench.qlsrn.embedding import (
    WeightReport, embed_fn, embed_piece, embedded_type, interpret, interpret_piece,
    run_compiled, soundness_mismatches, weight_report,
)
from walt_workbench.qlsrn.evaluate import eval_q
from walt_workbench.qlsrn.functions import (
    BRANCH, PRED, SUC0, SUC1, Comp, Proj, Rec, Var, Zero, is_closed, numeral,
)
from walt_workbench.qlsrn.parser import parse_qterm
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import Abs, Var as TermVar

BASE_REC = Rec(Zero(0, 0), Zero(1, 1), Zero(1, 1))


def nf(t):
    result, _ = reduce_to_nf(t, relation="beta")
    return result


class TestExponents:
    @pytest.mark.parametrize("f", [Zero(0, 0), Zero(2, 1), SUC0, SUC1, PRED, BRANCH, Proj(1, 1, 2)])
    def test_base_functions(self, f):
        assert embed_piece(f)[1] == 1

    def test_successor_type(self):
        assert embedded_type(SUC0) == (EagerLolli(Par(WORD), Par(WORD)), 1)

    def test_branch_type(self):
        assert embedded_type(BRANCH) == (arrows([Par(WORD)] * 3, Par(WORD), eager=True), 1)

    def test_composition(self):
        f = Comp(0, SUC1, (), (SUC0,))
        assert embed_piece(f)[1] == 3
        assert embed_piece(f)[0].ty == embedded_type(f)[0]

    def test_composition_of_uneven_parts(self):
        """The base part is raised to the exponent of the composed one"""
        inner = Comp(0, SUC1, (), (SUC0,))
        f = Comp(0, BRANCH, (), (PRED, inner, SUC1))
        assert embed_piece(f)[1] == 7

    def test_recursion(self):
        piece, m = embed_piece(BASE_REC)
        assert m == 5
        assert piece.ty == arrows([Par(WORD)] + [par_n(5, WORD)], par_n(5, WORD), eager=True)

    def test_explicit_exponent(self):
        ty, m = embedded_type(Proj(1, 1, 2), 3)
        assert m == 3
        assert ty == arrows([Par(WORD), par_n(3, WORD)], par_n(3, WORD), eager=True)


class TestDerivations:
    def test_successor(self):
        term, d, m = embed_fn(SUC1)
        assert d.conclusion.ty == EagerLolli(Par(WORD), Par(WORD))
        assert d.conclusion.subject == term
        assert m == 1

    def test_projection(self):
        term, d, _ = embed_fn(Proj(1, 1, 2))
        assert term == Abs("a", Abs("b", TermVar("b")))
        assert d.conclusion.ty == embedded_type(Proj(1, 1, 2))[0]

    @pytest.mark.parametrize("f", [Zero(1, 1), Zero(0, 0), PRED, BRANCH])
    def test_base(self, f):
        _, d, _ = embed_fn(f)
        assert d.conclusion.ty == embedded_type(f)[0]

    @pytest.mark.slow
    def test_composition(self):
        f = Comp(0, SUC1, (), (SUC0,))
        _, d, m = embed_fn(f)
        assert d.conclusion.ty == embedded_type(f)[0]

    @pytest.mark.slow
    def test_recursion(self):
        _, d, m = embed_fn(BASE_REC)
        assert d.conclusion.ty == embedded_type(BASE_REC)[0]

    def test_interpreted_numeral(self):
        piece, v = interpret_piece(numeral(5))
        assert v == 1
        assert piece.derivation.conclusion.ty == Par(WORD)


class TestInterpretation:
    @pytest.mark.parametrize("n", [0, 1, 5, 12])
    def test_numerals(self, n):
        assert nf(interpret(numeral(n))) == encode_word(n)

    def test_variable(self):
        assert nf(interpret(Var("x"), {"x": 3})) == encode_word(3)

    def test_predecessor(self):
        assert nf(interpret(parse_qterm("p(s1(z[0;0]()))"))) == encode_word(0)

    def test_branch(self):
        assert nf(interpret(parse_qterm("b(0, 4, 7)"))) == encode_word(4)
        assert nf(interpret(parse_qterm("b(x, 4, 7)"), {"x": 2})) == encode_word(7)

    def test_projection(self):
        t = Proj(1, 1, 1)(Var("x"), numeral(6))
        assert nf(interpret(t, {"x": 9})) == encode_word(9)

    def test_open_term(self):
        with pytest.raises(UndefinedEmbedding):
            interpret(SUC1(Var("x")))

    def test_non_linear(self):
        t = parse_qterm("b(x, x, y)", linear=False)
        with pytest.raises(NonLinearSafeVariable):
            interpret(t, {"x": 0, "y": 1})

    def test_exponent_follows_the_arguments(self):
        """A normal argument at $^5 W pushes the result to $^9 W"""
        inner = BASE_REC(numeral(1))
        piece, v = interpret_piece(Proj(1, 0, 1)(inner))
        assert interpret_piece(inner)[1] == 9
        assert v == 9
        assert piece.ty == par_n(9, WORD)

    @pytest.mark.slow
    def test_composition(self):
        t = Comp(0, SUC1, (), (SUC0,))(numeral(3))
        value, trace = run_compiled(t)
        assert value == eval_q(t) == 13
        assert trace.step_count > 0

    @pytest.mark.slow
    def test_recursion(self):
        f = Rec(Zero(0, 0), Zero(1, 1), Comp(1, SUC1, (), (Zero(1, 1),)))
        for x in (0, 1, 2, 3):
            assert run_compiled(f(numeral(x)))[0] == x & 1

    def test_restricted_relation_stops_short(self):
        """Ws0 passes a pair whose second half is an application"""
        t = parse_qterm("s0(s1(z[0;0]()))")
        with pytest.raises(NotACanonicalWord):
            run_compiled(t, relation="restricted")
        assert run_compiled(t)[0] == 2

    @pytest.mark.slow
    def test_corpus(self):
        """A few generated terms normalize to their value"""
        assert soundness_mismatches(generate_corpus(4, seed=7, max_depth=2)) == []

    @pytest.mark.slow
    @hsettings(max_examples=5, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 16))
    def test_corpus_any_seed(self, seed):
        assert soundness_mismatches(generate_corpus(3, seed=seed)) == []


@pytest.mark.slow
def test_default_corpus():
    """200 closed terms, four constructors deep, literals up to 31"""
    terms = generate_corpus()
    assert len(terms) == settings.corpus.count == 200
    assert all(is_closed(t) for t in terms)
    assert soundness_mismatches(terms) == []


class TestWeightReport:
    def test_base_function(self):
        report = weight_report(SUC1)
        assert report == WeightReport(1, Fraction(0), closed=False)
        assert not report.within
        assert not report.violated

    def test_numeral(self):
        report = weight_report(numeral(2))
        assert report == WeightReport(1, Fraction(4))
        assert report.within

    def test_recursion_exceeds_its_weight(self):
        report = weight_report(BASE_REC)
        assert (report.m, report.weight, report.schemes) == (5, 1, 1)
        assert not report.within
        assert report.scheme_excess and not report.violated

    def test_applied_recursion(self):
        report = weight_report(parse_qterm("rec(z[0;0]; z[1;1]; z[1;1])(s1(z[0;0]()))"))
        assert report.closed and report.scheme_excess
        assert not report.violated

    @pytest.mark.parametrize("text", ["z[0;0]()", "p(s1(z[0;0]()))", "s0(s1(s1(z[0;0]())))"])
    def test_base_terms_stay_within(self, text):
        report = weight_report(parse_qterm(text))
        assert report.schemes == 0
        assert report.within

    def test_binds_variables(self):
        assert weight_report(SUC1(Var("x")), {"x": 1}).weight == 4
