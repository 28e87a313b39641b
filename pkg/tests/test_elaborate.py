"""
Elaboration of annotated terms: rule choice, box partitions, contraction and weakening.
"""

import pytest

from walt_workbench.core.errors import ElaborationError, ParseError, WeakeningError
from walt_workbench.formulas.parser import parse_formula
from walt_workbench.formulas.types import Lolli, Par, TyVar
from walt_workbench.judgments.annotated import (
    Ap, Box, Lam, V, erase, parse_annotated, print_annotated,
)
from walt_workbench.judgments.checker import check_derivation
from walt_workbench.judgments.contexts import Context, TypeAssignment
from walt_workbench.judgments.derivation import Rule
from walt_workbench.judgments.elaborate import elaborate, remove_fake
from walt_workbench.judgments.measures import depth
from walt_workbench.syntax.parser import parse_term

a, b = TyVar("a"), TyVar("b")


def rules_used(d):
    return [n.rule for _, n in d.walk()]


class TestAnnotatedSyntax:
    def test_parse_binders_and_boxes(self):
        node = parse_annotated("\\(x:a) (y:!a). $[x]")
        assert isinstance(node, Lam) and node.ty == a
        assert isinstance(node.body, Lam) and node.body.ty == parse_formula("!a")
        assert isinstance(node.body.body, Box) and node.body.body.kind == "$"

    def test_eager_binder(self):
        node = parse_annotated("\\{x:$a}. x")
        assert isinstance(node, Lam) and node.eager

    def test_erase(self):
        node = parse_annotated("/\\a. \\(f:!(a -o a)). $[\\(y:a). f (f y)] @[b]")
        assert erase(node) == parse_term("\\f y. f (f y)")

    def test_printer_round_trip(self):
        for text in ["\\(x:a -o a) (y:a). x y", "w ![y] $[![\\(x:b). x]]",
                     "(\\{u:$a}. $[u]) x", "(/\\a. \\(x:a). x) @[b -o b]"]:
            assert print_annotated(parse_annotated(text)) == text

    def test_parse_error(self):
        with pytest.raises(ParseError):
            parse_annotated("\\x. x")


class TestRuleChoice:
    def test_linear_identity(self):
        d = elaborate("\\(x:a). x")
        assert d.rule is Rule.LOLLI_I
        assert d.conclusion.ty == Lolli(a, a)

    def test_partial_binder(self):
        """A $-typed binder used inside a $-box is partially discharged"""
        d = elaborate("\\(x:$a). $[x]")
        assert d.rule is Rule.PAR_LOLLI_I
        assert d.premises[0].rule_data["delta"] == ("x",)

    def test_eager_binder(self):
        d = elaborate("\\{x:$a}. $[x]")
        assert d.rule is Rule.EAGER_I
        assert d.premises[0].rule_data["theta"] == ("x",)

    def test_bang_application(self):
        d = elaborate("f ![y]", gamma={"f": parse_formula("!a -o a")}, phi={"y": a})
        assert d.rule is Rule.BANG_LOLLI_E
        assert d.premises[1].rule_data["phi"] == ("y",)

    def test_eager_application(self):
        d = elaborate("(\\{u:$a}. $[u]) $[v]", theta={"v": a})
        assert d.rule is Rule.EAGER_E
        assert d.conclusion.e.empty_theta == Context({"v": a})

    def test_nested_partial_binder(self):
        """Two $-boxes strip two $ from the binder"""
        d = elaborate("\\(x:$$a). $[$[x]]")
        assert d.conclusion.ty == Lolli(Par(Par(a)), Par(Par(a)))
        assert depth(d) == 2

    def test_instantiation(self):
        d = elaborate("(/\\c. \\(x:c). x) @[a -o a]")
        assert d.rule is Rule.FORALL_E
        assert d.conclusion.ty == parse_formula("(a -o a) -o a -o a")

    def test_instance_read_off_the_arguments(self):
        """Two quantifiers fixed by two arguments"""
        d = elaborate("(/\\c e. \\(x:c) (y:e). x) @[_] @[_] u v",
                      gamma={"u": Lolli(a, a), "v": b})
        assert d.conclusion.ty == Lolli(a, a)
        assert Rule.FORALL_E in rules_used(d)

    def test_open_instance_printed(self):
        assert print_annotated(parse_annotated("f @[_] x")) == "f @[_] x"

    def test_open_instance_needs_arguments(self):
        with pytest.raises(ElaborationError):
            elaborate("(/\\c. \\(x:c). x) @[_]")

    def test_open_instance_not_fixed(self):
        with pytest.raises(ElaborationError):
            elaborate("(/\\c. \\(x:a). x) @[_] y", gamma={"y": a})


class TestContraction:
    def test_occurrences_in_one_box_are_contracted(self):
        d = elaborate("\\(f:!(a -o a)). $[\\(y:a). f (f y)]")
        used = rules_used(d)
        assert used.count(Rule.CONTRACT) == 1
        assert d.premises[0].rule is Rule.CONTRACT

    def test_three_occurrences_chain(self):
        d = elaborate("\\(f:!(a -o a)). $[\\(y:a). f (f (f y))]")
        assert rules_used(d).count(Rule.CONTRACT) == 2
        assert d.conclusion.subject == parse_term("\\f y. f (f (f y))")

    def test_occurrences_in_separate_boxes_share_the_pair(self):
        d = elaborate("\\(x:!a). g ![x] ![x]", gamma={"g": parse_formula("!a -o !a -o a")})
        assert Rule.CONTRACT not in rules_used(d)

    def test_free_polynomial_variable(self):
        d = elaborate("$[g (g y)]", phi={"g": parse_formula("a -o a")}, gamma={},
                      theta={"y": a})
        assert d.conclusion.e.phi_vars == {"g"}
        assert d.rule is Rule.CONTRACT


class TestWeakening:
    def test_unused_linear_binder(self):
        d = elaborate("\\(x:a) (y:b). x")
        assert d.conclusion.ty == parse_formula("a -o b -o a")
        axiom = d.premises[0].premises[0]
        assert axiom.rule_data["weakened"] == ("y",)

    def test_unused_polynomial_binder(self):
        d = elaborate("\\(x:!a) (y:b). y")
        assert d.conclusion.ty == parse_formula("!a -o b -o b")

    def test_unused_declared_variable(self):
        d = elaborate("\\(x:a). x", gamma={"z": b})
        assert d.conclusion.gamma == Context({"z": b})

    def test_elementary_fake_cannot_enter_a_bang_box(self):
        with pytest.raises(WeakeningError):
            elaborate("\\{x:$a}. ![\\(y:a). y]")

    def test_remove_fake(self):
        d = elaborate("\\(x:a). x", gamma={"z": b}, phi={"p": a})
        lean = remove_fake(remove_fake(d, "z"), "p")
        j = check_derivation(lean)
        assert not j.gamma and not j.e
        assert j.subject == d.conclusion.subject

    def test_remove_fake_rejects_used_variables(self):
        d = elaborate("x", gamma={"x": a})
        with pytest.raises(ElaborationError):
            remove_fake(d, "x")


class TestRejected:
    def test_linear_variable_inside_box(self):
        with pytest.raises(ElaborationError):
            elaborate("\\(x:a). $[x]")

    def test_linear_variable_used_twice(self):
        with pytest.raises(ElaborationError):
            elaborate("\\(x:a -o a) (y:a). x (x y)")

    def test_partial_variable_in_bang_box(self):
        with pytest.raises(ElaborationError):
            elaborate("\\(x:$a). ![x]")

    def test_type_mismatch(self):
        with pytest.raises(ElaborationError):
            elaborate("(\\(x:a). x) y", gamma={"y": b})

    def test_undeclared_variable(self):
        with pytest.raises(ElaborationError):
            elaborate("x")

    def test_two_polynomial_occurrences_in_one_bang_box(self):
        with pytest.raises(ElaborationError):
            elaborate("\\(f:!(a -o a)). ![\\(y:a). f (f y)]")

    def test_shadowing_is_renamed(self):
        """An inner binder reusing a free name does not clash with it"""
        d = elaborate("(\\(y:a). y) y", gamma={"y": a})
        assert check_derivation(d).subject == parse_term("(\\z. z) y")

    def test_direct_dsl_nodes(self):
        node = Lam("x", a, Ap(V("f"), V("x")))
        d = elaborate(node, gamma={"f": Lolli(a, b)})
        assert d.conclusion.ty == Lolli(a, b)
        assert d.conclusion.e.phi_pairs() == []
        assert TypeAssignment("f", Lolli(a, b)) in d.conclusion.gamma.assignments()
