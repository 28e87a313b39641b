"""
Rule checker tests: accepted derivations and one rejected mutation per side condition.
"""

from dataclasses import replace

import pytest

from walt_workbench.core.errors import DerivationError
from walt_workbench.formulas.parser import parse_formula
from walt_workbench.formulas.types import Bang, Forall, Lolli, Par, TyVar
from walt_workbench.judgments import derivation as rules
from walt_workbench.judgments import worked
from walt_workbench.judgments.checker import (
    Relaxation, ViolationKind, check_derivation, check_rule, violations,
)
from walt_workbench.judgments.contexts import EMPTY, EMPTY_E, Context, PDContext, TypeAssignment
from walt_workbench.judgments.derivation import Derivation, Judgment, Rule
from walt_workbench.syntax.parser import parse_term
from walt_workbench.syntax.terms import Var

a, b = TyVar("a"), TyVar("b")
arrow = Lolli(a, a)


def kind_of(d: Derivation, relax=()):
    with pytest.raises(DerivationError) as err:
        check_derivation(d, relax)
    return err.value.violation.kind


def with_conclusion(d: Derivation, **changes) -> Derivation:
    return Derivation(d.rule, replace(d.conclusion, **changes), d.premises, d.rule_data)


def contracted_box():
    """``$-box over \\y. f1 (f2 y)`` with f1, f2 polynomial"""
    body = rules.lolli_elim(rules.axiom("f1", arrow),
                            rules.lolli_elim(rules.axiom("f2", arrow), rules.axiom("y", a)))
    return rules.par_box(rules.lolli_intro(body, "y"), to_phi=["f1", "f2"])


class TestAccepted:
    def test_axiom(self):
        """A linear axiom with weakened extras is fine"""
        d = rules.axiom("x", a, gamma={"u": b}, delta={"v": b})
        assert check_rule(d) is None

    def test_wy_identity(self):
        j = check_derivation(worked.wy_identity())
        assert j.subject == parse_term("w y (\\x. x)")
        assert j.ty == TyVar("c")

    def test_shared_argument(self):
        """The root keeps y linear and pairs w with z"""
        j = check_derivation(worked.shared_argument())
        assert j.gamma == Context({"y": parse_formula("!a -o !a -o a")})
        assert j.e == PDContext([(Context({"w": arrow}), TypeAssignment("z", a))])

    def test_church_application(self):
        j = check_derivation(worked.church_application())
        assert j.ty == worked.NAT

    def test_contraction(self):
        d = rules.contraction(contracted_box(), "f1", "f2", "f")
        j = check_derivation(d)
        assert j.subject == parse_term("\\y. f (f y)")
        assert j.e.phi_vars == {"f"}

    def test_forall_rules(self):
        poly = rules.forall_intro(rules.lolli_intro(rules.axiom("x", a), "x"), "a")
        inst = rules.forall_elim(poly, arrow)
        assert check_derivation(inst).ty == Lolli(arrow, arrow)

    def test_eager_application(self):
        """An eager argument depending only on elementary assumptions"""
        m = rules.eager_intro(rules.par_box(rules.axiom("u", a), to_theta=["u"]), "u")
        n = rules.par_box(rules.axiom("v", a), to_theta=["v"])
        j = check_derivation(rules.eager_elim(m, n))
        assert j.e.empty_theta == Context({"v": a})

    def test_violations_lists_nothing_for_valid_trees(self):
        assert violations(worked.church_application()) == []


class TestRejected:
    def test_modal_axiom(self):
        """An axiom holding x:!a in the linear context"""
        j = Judgment(Context({"x": Bang(a)}), EMPTY, EMPTY_E, Var("x"), Bang(a))
        assert check_rule(Derivation(Rule.AX, j)).kind is ViolationKind.NON_LINEAR_AXIOM

    def test_axiom_without_assumption(self):
        j = Judgment(EMPTY, EMPTY, EMPTY_E, Var("x"), a)
        assert check_rule(Derivation(Rule.AX, j)).kind is ViolationKind.AXIOM_MISSING

    def test_bang_argument_to_linear_arrow(self):
        """-oE never takes an argument of type !C"""
        f = rules.axiom("f", Lolli(Bang(a), a))
        arg = rules.bang_box(rules.axiom("y", a), to_phi="y")
        assert kind_of(rules.lolli_elim(f, arg)) is ViolationKind.BANG_ARGUMENT

    def test_bang_function_context(self):
        d = worked.bang_function_counterexample()
        assert kind_of(d) is ViolationKind.BANG_FUNCTION_CONTEXT

    def test_eager_argument_context(self):
        d = worked.eager_argument_counterexample()
        assert kind_of(d) is ViolationKind.EAGER_ARGUMENT_CONTEXT

    def test_eager_argument_with_polynomial_pair(self):
        m = rules.eager_intro(rules.par_box(rules.axiom("u", a), to_theta=["u"]), "u")
        n = rules.par_box(rules.axiom("v", a), to_phi=["v"])
        assert kind_of(rules.eager_elim(m, n)) is ViolationKind.EAGER_ARGUMENT_CONTEXT

    def test_bang_occurrence(self):
        d = worked.weak_occurrence_counterexample()
        assert kind_of(d) is ViolationKind.BANG_OCCURRENCE

    def test_bang_premise_with_partial_assumptions(self):
        """The inner !-box of w y (\\x.x) over a premise with non-empty D"""
        d = worked.wy_identity()
        premise = rules.lolli_intro(rules.axiom("x", b, delta={"q": a}), "x")
        mutated = d.replace_at((1, 0), rules.bang_box(premise))
        with pytest.raises(DerivationError) as err:
            check_derivation(mutated)
        assert err.value.violation.kind is ViolationKind.BANG_DELTA
        assert err.value.path == (1, 0)

    def test_bang_without_polynomial_pair(self):
        d = rules.bang_box(rules.axiom("x", a), to_theta=["x"])
        assert kind_of(d) is ViolationKind.CONTEXT_MISMATCH

    def test_bang_uncovered_premise(self):
        d = rules.bang_box(rules.axiom("x", a))
        assert kind_of(d) is ViolationKind.BANG_COVERAGE

    def test_bang_two_polynomial_pairs(self):
        d = rules.bang_box(rules.axiom("x", a), to_phi="x")
        e = PDContext([(EMPTY, TypeAssignment("x", a)), (EMPTY, TypeAssignment("y", a))])
        assert kind_of(with_conclusion(d, e=e)) is ViolationKind.BANG_COVERAGE

    def test_box_over_polynomial_pair(self):
        inner = rules.bang_box(rules.axiom("y", a), to_phi="y")
        assert kind_of(rules.par_box(inner)) is ViolationKind.BOX_PREMISE_PAIRS

    def test_par_uncovered_premise(self):
        d = rules.par_box(rules.axiom("x", a), to_delta=["x"])
        assert kind_of(with_conclusion(d, delta=EMPTY)) is ViolationKind.PAR_COVERAGE

    def test_par_pair_with_theta(self):
        d = rules.par_box(rules.axiom("x", a), to_phi=["x"])
        e = PDContext([(Context({"u": b}), TypeAssignment("x", a))])
        assert kind_of(with_conclusion(d, e=e)) is ViolationKind.PAR_PAIRING

    def test_par_drops_partial_assumptions(self):
        """Premise D must reappear $-prefixed in the conclusion"""
        inner = rules.par_box(rules.axiom("x", a), to_delta=["x"])
        outer = rules.par_box(inner)
        assert kind_of(with_conclusion(outer, delta=EMPTY)) is ViolationKind.CONTEXT_MISMATCH

    def test_forall_freshness(self):
        d = rules.forall_intro(rules.axiom("x", a), "a")
        assert kind_of(d) is ViolationKind.FORALL_FRESHNESS

    def test_forall_modal_instance(self):
        poly = rules.forall_intro(rules.lolli_intro(rules.axiom("x", a), "x"), "a")
        bad = Derivation(Rule.FORALL_E, replace(poly.conclusion, ty=Lolli(Bang(b), Bang(b))),
                         (poly,), {"with": Bang(b)})
        assert kind_of(bad) is ViolationKind.FORALL_INSTANCE

    def test_forall_wrong_instance_type(self):
        poly = rules.forall_intro(rules.lolli_intro(rules.axiom("x", a), "x"), "a")
        inst = rules.forall_elim(poly, b)
        assert kind_of(with_conclusion(inst, ty=arrow)) is ViolationKind.TYPE_MISMATCH

    def test_contraction_of_linear_variable(self):
        box = contracted_box()
        bad = Derivation(Rule.CONTRACT, box.conclusion, (box,), {"x": "f1", "y": "y", "z": "f"})
        assert kind_of(bad) is ViolationKind.CONTRACTION

    def test_contraction_subject(self):
        d = rules.contraction(contracted_box(), "f1", "f2", "f")
        mutated = with_conclusion(d, subject=parse_term("\\y. f (g y)"))
        assert kind_of(mutated) is ViolationKind.SUBJECT_MISMATCH

    def test_lolli_intro_type(self):
        d = rules.lolli_intro(rules.axiom("x", a), "x")
        assert kind_of(with_conclusion(d, ty=Lolli(b, a))) is ViolationKind.TYPE_MISMATCH

    def test_premise_count(self):
        ax = rules.axiom("x", a)
        bad = Derivation(Rule.LOLLI_E, ax.conclusion, (ax,))
        assert check_rule(bad).kind is ViolationKind.PREMISE_COUNT

    def test_domain_clash(self):
        """Two premises assuming the same linear variable"""
        f = rules.axiom("f", arrow, gamma={"x": a})
        x = rules.axiom("x", a)
        j = Judgment(Context({"f": arrow, "x": a}), EMPTY, EMPTY_E, parse_term("f x"), a)
        assert kind_of(Derivation(Rule.LOLLI_E, j, (f, x))) is ViolationKind.DOMAIN_CLASH

    def test_judgment_shape(self):
        """A variable in both G and D"""
        j = Judgment(Context({"x": a}), Context({"x": a}), EMPTY_E, Var("x"), a)
        assert check_rule(Derivation(Rule.AX, j)).kind is ViolationKind.JUDGMENT_SHAPE

    def test_error_reports_path(self):
        d = rules.lolli_intro(rules.forall_intro(rules.axiom("x", a), "a"), "x")
        with pytest.raises(DerivationError) as err:
            check_derivation(d)
        assert err.value.path == (0,)
        assert "forallI" in str(err.value)


class TestRelaxations:
    @pytest.mark.parametrize("build, relaxation", [
        (worked.eager_argument_counterexample, worked.EAGER_ARGUMENT_RELAXATION),
        (worked.weak_occurrence_counterexample, worked.WEAK_OCCURRENCE_RELAXATION),
        (worked.bang_function_counterexample, worked.BANG_FUNCTION_RELAXATION),
    ])
    def test_counterexamples_need_their_relaxation(self, build, relaxation):
        d = build()
        assert check_derivation(d, {relaxation}) == d.conclusion
        others = set(Relaxation) - {relaxation}
        with pytest.raises(DerivationError):
            check_derivation(d, others)

    def test_eager_counterexample_root(self):
        j = check_derivation(worked.eager_argument_counterexample(),
                             {Relaxation.EAGER_ELIM_ANY_GAMMA})
        assert j.ty == Par(a)
        assert j.e == PDContext([(EMPTY, TypeAssignment("w", a))])
        assert not j.gamma

    def test_forall_type_shape(self):
        assert isinstance(worked.NAT, Forall)
