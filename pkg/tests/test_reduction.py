"""
Restricted reduction: redex conditions, runs, depth-indexed rounds, bounds and trace files.
"""

from unittest.mock import patch

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from walt_workbench.core.errors import BudgetExhausted, NotARedex, NotNormalAfterFinalRound, ParseError
from walt_workbench.formulas.types import TyVar
from walt_workbench.judgments import derivation as rules
from walt_workbench.judgments import worked
from walt_workbench.reduction.bounds import check_round_bounds, poly_bound_report, round_step_bounds
from walt_workbench.reduction.engine import (
    canonical_normalize, complete_round, redex_depth, reduce_to_nf,
)
from walt_workbench.reduction.redex import Redex, RedexCase, find_redexes, step
from walt_workbench.reduction.tracefile import (
    chain_breaks, dump_trace, load_trace, read_trace, write_trace,
)
from walt_workbench.syntax.parser import parse_term
from walt_workbench.syntax.terms import ARG, BODY, FUN, annotate, subterms

a = TyVar("a")
OMEGA = "(\\x. x x) (\\x. x x)"


def uniform(text, level=0):
    t = parse_term(text)
    return annotate(t, {pos: level for pos, _ in subterms(t)})


class TestRedexes:
    def test_erasing(self):
        assert find_redexes(parse_term("(\\x. y) (w z)")) == [Redex((), RedexCase.ERASING, 0)]

    def test_linear_value(self):
        assert find_redexes(parse_term("(\\x. x) (\\y. y)")) == [Redex((), RedexCase.LINEAR_VALUE, 1)]

    def test_duplicated_application_is_stuck(self):
        """An application argument cannot be duplicated"""
        assert find_redexes(parse_term("(\\x. z x x) (w v)")) == []

    def test_linear_non_value_is_stuck(self):
        assert find_redexes(parse_term("(\\x. f x) (g y)")) == []

    def test_duplicable_value_with_one_free_variable(self):
        [r] = find_redexes(parse_term("(\\x. x x) (\\y. y z)"))
        assert r.case is RedexCase.DUPLICABLE_VALUE
        assert r.binder_occurrences == 2

    def test_duplicable_variable(self):
        [r] = find_redexes(parse_term("(\\x. f x x) y"))
        assert r.case is RedexCase.DUPLICABLE_VALUE

    def test_two_free_variables_block_duplication(self):
        assert find_redexes(parse_term("(\\x. x x) (\\y. u v)")) == []

    def test_leftmost_outermost_order(self):
        t = parse_term("(\\f. (\\y. y) f) ((\\u. u) (\\v. v))")
        assert [r.pos for r in find_redexes(t)] == [(FUN, BODY), (ARG,)]

    def test_redex_under_binder(self):
        assert [r.pos for r in find_redexes(parse_term("\\z. (\\x. x) z"))] == [(BODY,)]


class TestStep:
    def test_erasing_step(self):
        t = parse_term("(\\x. y) q")
        assert step(t, find_redexes(t)[0]) == parse_term("y")

    def test_duplicating_step(self):
        t = parse_term("(\\x. x x) (\\y. y)")
        assert step(t, find_redexes(t)[0]) == parse_term("(\\y. y) (\\y. y)")

    def test_not_a_redex(self):
        with pytest.raises(NotARedex):
            step(parse_term("(\\x. f x x) (g y)"), Redex((), RedexCase.DUPLICABLE_VALUE, 2))

    def test_position_outside_the_term(self):
        with pytest.raises(NotARedex):
            step(parse_term("x"), Redex((FUN,), RedexCase.ERASING, 0))

    def test_capture_is_avoided(self):
        t = parse_term("(\\x. \\y. x) y")
        assert step(t, find_redexes(t)[0]) == parse_term("\\z. y")

    def test_annotations_travel(self):
        """The argument keeps its depths and the context keeps its own"""
        t = annotate(parse_term("(\\x. g x) (\\y. y)"),
                     {(): 0, (FUN,): 0, (FUN, BODY): 0, (FUN, BODY, FUN): 0,
                      (FUN, BODY, ARG): 0, (ARG,): 2, (ARG, BODY): 2})
        out = step(t, find_redexes(t)[0])
        assert out.depth == 0
        assert out.arg.depth == 2 and out.arg.body.depth == 2


class TestReduceToNormalForm:
    def test_normal_form_is_kept(self):
        t = parse_term("\\x. x")
        result, trace = reduce_to_nf(t)
        assert result == t
        assert trace.step_count == 0

    def test_steps_chain(self):
        result, trace = reduce_to_nf(parse_term("(\\f. (\\y. y) f) ((\\u. u) (\\v. v))"))
        assert result == parse_term("\\v. v")
        assert trace.step_count == 3
        assert chain_breaks(trace) == []
        assert trace.result == result

    def test_stuck_term_is_normal(self):
        t = parse_term("(\\x. z x x) (w v)")
        result, trace = reduce_to_nf(t)
        assert result == t
        assert trace.step_count == 0

    def test_budget(self):
        with pytest.raises(BudgetExhausted) as err:
            reduce_to_nf(parse_term(OMEGA), budget=5)
        assert err.value.trace.step_count == 5
        assert err.value.trace.result == parse_term(OMEGA)

    def test_budget_from_settings(self):
        with patch("walt_workbench.reduction.engine.settings") as fake:
            fake.reduction.budget = 3
            fake.reduction.strategy = "leftmost-outermost"
            fake.reduction.relation = "restricted"
            with pytest.raises(BudgetExhausted):
                reduce_to_nf(parse_term(OMEGA))

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            reduce_to_nf(parse_term("x"), strategy="innermost")

    def test_beta_relation_unsticks_linear_application(self):
        t = parse_term("\\f g y. (\\x. f x) (g y)")
        assert reduce_to_nf(t)[0] == t
        result, trace = reduce_to_nf(t, relation="beta")
        assert result == parse_term("\\f g y. f (g y)")
        assert [s.case for s in trace.steps] == [RedexCase.BETA.value]

    def test_beta_relation_prefers_restricted_redexes(self):
        t = parse_term("(\\x. f x) (g ((\\u. u) y))")
        _, trace = reduce_to_nf(t, relation="beta")
        assert [s.case for s in trace.steps] == ["linear-value", "beta"]

    def test_unknown_relation(self):
        with pytest.raises(ValueError):
            reduce_to_nf(parse_term("x"), relation="full")


class TestRounds:
    def test_already_normal_at_level(self):
        t = uniform("\\x. x")
        assert complete_round(t, 0) == (t, 0)

    def test_round_ignores_other_levels(self):
        t = annotate(parse_term("(\\x. x) ((\\y. y) (\\z. z))"), {(): 0, (ARG,): 1})
        assert complete_round(t, 0)[1] == 0
        after, fired = complete_round(t, 1)
        assert fired == 1
        assert after == parse_term("(\\x. x) (\\z. z)")
        assert after.depth == 0
        assert redex_depth(after, find_redexes(after)[0]) == 0

    def test_redex_depth_needs_annotations(self):
        t = parse_term("(\\x. x) y")
        with pytest.raises(ValueError):
            redex_depth(t, find_redexes(t)[0])

    @given(seed=st.integers(min_value=0, max_value=10 ** 6))
    @hsettings(max_examples=25, deadline=None)
    def test_round_results_agree_across_orders(self, seed):
        """Any order of firing the level-0 redexes reaches the same term"""
        t = uniform("(\\f. f ((\\x. x) (\\y. y))) ((\\u. u) (\\v. v))")
        leftmost, _ = complete_round(t, 0)
        shuffled, _ = complete_round(t, 0, strategy="random", seed=seed)
        assert shuffled == leftmost == parse_term("\\y. y")


class TestCanonicalStrategy:
    def test_church_application(self):
        """One step at level 0 and an empty round at level 1"""
        trace = canonical_normalize(worked.church_application())
        assert trace.result == parse_term("\\f y. f (f y)")
        assert [(r.level, r.steps, r.size) for r in trace.rounds] == [(0, 1, 7), (1, 0, 7)]
        assert trace.steps[0].depth == 0

    def test_normal_subject_gives_empty_trace(self):
        trace = canonical_normalize(worked.wy_identity())
        assert trace.step_count == 0
        assert len(trace.rounds) == 3

    def test_rounds_respect_the_bounds(self):
        d = worked.church_application()
        assert check_round_bounds(canonical_normalize(d), poly_bound_report(d)) == []

    def test_missing_annotations_leave_redexes(self):
        with patch("walt_workbench.reduction.engine.depth_map", return_value={}):
            with pytest.raises(NotNormalAfterFinalRound) as err:
                canonical_normalize(worked.church_application())
        assert len(err.value.trace.rounds) == 2

    def test_budget(self):
        with pytest.raises(BudgetExhausted):
            canonical_normalize(worked.church_application(), budget=0)


class TestBounds:
    def test_depth_zero(self):
        d = rules.lolli_elim(rules.lolli_intro(rules.axiom("x", a), "x"), rules.axiom("y", a))
        report = poly_bound_report(d)
        assert report.per_round_bounds == [4]
        assert report.bound == 4
        trace = canonical_normalize(d)
        assert trace.step_count == 1
        assert check_round_bounds(trace, report) == []

    def test_wy_identity_budgets(self):
        report = poly_bound_report(worked.wy_identity())
        assert report.per_round_bounds == [3, 3, 4]
        assert report.size == 10
        assert report.k == 2

    def test_church_application_totals(self):
        report = poly_bound_report(worked.church_application())
        assert report.per_round_bounds == [4, 8]
        assert report.size_bounds == [288, 2 * 288 ** 2]
        assert report.bound == 4 + 288
        assert report.step_bounds == [4, 288]
        assert round_step_bounds(report, strict=True) == [4, 8]

    def test_strict_bounds_hold_on_worked_derivations(self):
        for d in (worked.church_application(), worked.wy_identity()):
            assert check_round_bounds(canonical_normalize(d), poly_bound_report(d), strict=True) == []

    def test_only_the_strict_check_sees_a_copied_round(self):
        d = worked.church_application()
        trace = canonical_normalize(d)
        trace.rounds[1].steps = 50
        report = poly_bound_report(d)
        assert check_round_bounds(trace, report) == []
        problems = check_round_bounds(trace, report, strict=True)
        assert problems == ["round d=1: 50 steps exceed 8"]

    def test_violations_are_reported(self):
        d = worked.church_application()
        trace = canonical_normalize(d)
        trace.rounds[0].steps = 99
        problems = check_round_bounds(trace, poly_bound_report(d))
        assert len(problems) == 1 and "round d=0" in problems[0]


class TestTraceFiles:
    def test_line_format(self):
        _, trace = reduce_to_nf(parse_term("(\\x. x) y"))
        assert dump_trace(trace) == "#0 d=- pos=. | (\\x. x) y --> y\n"

    def test_round_lines(self):
        trace = canonical_normalize(worked.church_application())
        lines = dump_trace(trace).splitlines()
        assert lines[0].startswith("#0 d=0 pos=. | ")
        assert lines[1:] == ["ROUND d=0 steps=1 size=7", "ROUND d=1 steps=0 size=7"]

    def test_reload(self, tmp_path):
        _, trace = reduce_to_nf(parse_term("(\\f. (\\y. y) f) ((\\u. u) (\\v. v))"))
        path = tmp_path / "run.trace"
        write_trace(trace, path)
        loaded = read_trace(path)
        assert [s.after for s in loaded.steps] == [s.after for s in trace.steps]
        assert [s.pos for s in loaded.steps] == [s.pos for s in trace.steps]
        assert dump_trace(loaded) == path.read_text()

    def test_garbage(self):
        with pytest.raises(ParseError):
            load_trace("step one\n")

    def test_bad_position(self):
        with pytest.raises(ParseError):
            load_trace("#0 d=0 pos=left | x --> x\n")
