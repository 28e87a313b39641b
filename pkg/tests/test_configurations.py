"""
Configurations, head/tail pairs and the transition function.
"""

import pytest

from walt_workbench.combinators import configurations as cf
from walt_workbench.combinators import embeddings as em
from walt_workbench.combinators import words as wd
from walt_workbench.combinators.encoders import encode_word, list_term, passed
from walt_workbench.combinators.oracles import run_oracle
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import (
    WORD, config_levels, configuration, final_configuration, pair, preconfiguration,
)
from walt_workbench.core.errors import (
    ArityMismatch, HypothesisTypeMismatch, HypothesisViolated, RaggedLists,
)
from walt_workbench.formulas.types import Lolli, Par, TyVar, par_n
from walt_workbench.judgments.annotated import Ap, Box, V, lam
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import apps


def nf(head, *args):
    result, _ = reduce_to_nf(apps(head, *args), relation="beta")
    return result


def _binders(n, s, m):
    return ([(f"h{i}", Par(WORD), True) for i in range(1 + n)]
            + [(f"q{j}", par_n(m, WORD), True) for j in range(s)] + [("r", par_n(m, WORD), True)])


def append_one(n, s, m):
    """F'(heads.., r) = 2r + 1"""
    body = Ap(em.embed_basic(wd.ws1(), m).node, passed("r", par_n(m, WORD)))
    return Piece("append1", lam(_binders(n, s, m), body), cf.transition_function_type(n, s, m),
                 lambda *args: 2 * args[-1] + 1)


def take_head(n, s, m):
    """F'(h0, .., r) = h0"""
    body = Box(Ap(em.coerce_power(m - 1).node, V("h0")))
    return Piece("head", lam(_binders(n, s, m), body), cf.transition_function_type(n, s, m),
                 lambda *args: args[0])


class TestRealizers:
    def test_configuration_type(self):
        piece = cf.make_configuration(3, [[1, 2], [4, 5], [6, 7]], 1, 1, 2)
        assert piece.derivation.conclusion.ty == configuration(1, 1, 2)

    def test_final_configuration_type(self):
        piece = cf.make_final_configuration(3, [[1], [2]], 1, 0, 1)
        assert piece.derivation.conclusion.ty == final_configuration(1, 0, 1)

    def test_empty_lists(self):
        piece = cf.make_configuration(0, [[], []], 0, 1, 2)
        assert piece.derivation.conclusion.ty == configuration(0, 1, 2)

    def test_preconfiguration_type(self):
        """Open in its step and tail variables"""
        levels = config_levels(1, 0, 1)
        piece = cf.make_preconfiguration(2, [[1, 3], [5, 6]], 1, 0, 1)
        assert piece.derivation.conclusion.ty == preconfiguration(cf.alphas(2), cf.DELTA, levels, 1)
        assert set(piece.free) == {"w0", "w1", "c0_1", "c0_2", "c1_1", "c1_2"}

    def test_ragged_lists(self):
        with pytest.raises(RaggedLists):
            cf.make_configuration(0, [[1], [1, 2]], 1, 0, 1)

    def test_list_count(self):
        with pytest.raises(ArityMismatch):
            cf.make_configuration(0, [[1]], 1, 0, 1)

    def test_preconfiguration_needs_heads(self):
        with pytest.raises(HypothesisViolated):
            cf.make_preconfiguration(0, [[], []], 1, 0, 1)


class TestPairs:
    def test_base_pair(self):
        a = TyVar("a")
        assert cf.base_pair(2).derivation.conclusion.ty == Lolli(a, pair(a, cf.DELTA, 2))

    def test_step_pair(self):
        piece = cf.step_pair(1, wd.ws1())
        assert piece.derivation.conclusion.ty == piece.ty

    def test_step_pair_needs_word_function(self):
        with pytest.raises(HypothesisTypeMismatch):
            cf.step_pair(1, wd.branch())


class TestTransitionTyping:
    @pytest.mark.parametrize("n, s, m", [(0, 0, 1), (1, 1, 2)])
    def test_pop(self, n, s, m):
        piece = cf.config_to_preconfig(n, s, m, wd.ws1())
        assert piece.derivation.conclusion.ty == piece.ty

    @pytest.mark.parametrize("n, s, m", [(0, 0, 1), (1, 1, 2)])
    def test_push(self, n, s, m):
        piece = cf.preconfig_to_config(n, s, m, append_one(n, s, m))
        assert piece.derivation.conclusion.ty == piece.ty

    def test_transition(self):
        piece = cf.config_to_config(1, 1, 2, wd.ws0(), append_one(1, 1, 2))
        c = configuration(1, 1, 2)
        assert piece.derivation.conclusion.ty == Lolli(c, c)

    def test_transition_function_arity(self):
        with pytest.raises(HypothesisTypeMismatch):
            cf.preconfig_to_config(1, 0, 1, append_one(0, 0, 1))

    @pytest.mark.parametrize("build", [cf.lists_to_config, cf.word_to_config, cf.config_to_final,
                                       cf.final_to_word])
    def test_in_and_out(self, build):
        piece = build(1, 1, 2)
        assert piece.derivation.conclusion.ty == piece.ty

    def test_final_to_word_type(self):
        assert cf.final_to_word(0, 0, 2).ty == Lolli(final_configuration(0, 0, 2), par_n(3, WORD))


class TestTransitionDynamics:
    LISTS = [[1, 2, 3], [4, 5, 6]]

    def config(self, r=2, lists=None):
        return cf.make_configuration(r, lists or self.LISTS, 1, 0, 1).term

    def test_pop_through_identity(self):
        got = nf(cf.config_to_preconfig(1, 0, 1, wd.word_identity()).term, self.config())
        assert got == run_oracle("C2PC", 2, self.LISTS, 1, 0, 1, wd.word_identity())

    def test_pop_applies_to_the_head_list(self):
        got = nf(cf.config_to_preconfig(1, 0, 1, wd.ws1()).term, self.config())
        assert got == run_oracle("C2PC", 2, self.LISTS, 1, 0, 1, wd.ws1())

    def test_pop_single_elements(self):
        lists = [[7], [8]]
        got = nf(cf.config_to_preconfig(1, 0, 1, wd.ws1()).term, self.config(0, lists))
        assert got == run_oracle("C2PC", 0, lists, 1, 0, 1, wd.ws1())

    @pytest.mark.parametrize("build", [append_one, take_head])
    def test_push(self, build):
        fp = build(1, 0, 1)
        pre = cf.make_preconfiguration(2, self.LISTS, 1, 0, 1).term
        got = nf(cf.preconfig_to_config(1, 0, 1, fp).term, pre)
        assert got == run_oracle("PC2C", 2, self.LISTS, 1, 0, 1, fp)

    def test_transition(self):
        fp = append_one(1, 0, 1)
        got = nf(cf.config_to_config(1, 0, 1, wd.ws1(), fp).term, self.config())
        assert got == run_oracle("C2C", 2, self.LISTS, 1, 0, 1, wd.ws1(), fp)
        assert got == cf.make_configuration(5, [[5, 7], [5, 6]], 1, 0, 1).term

    def test_transition_reads_the_head(self):
        fp = take_head(1, 0, 1)
        got = nf(cf.config_to_config(1, 0, 1, wd.word_identity(), fp).term, self.config())
        assert got == cf.make_configuration(1, [[2, 3], [5, 6]], 1, 0, 1).term

    def test_lists_to_config(self):
        lists = [[0, 1], [3, 4]]
        args = [list_term([encode_word(v) for v in items]) for items in lists]
        assert nf(cf.lists_to_config(1, 0, 1).term, *args) == run_oracle("L2C", lists, 1, 0, 1)

    def test_word_to_config(self):
        got = nf(cf.word_to_config(1, 0, 1).term, encode_word(3), encode_word(5))
        assert got == run_oracle("W2C", [3], [], 5, 1)

    def test_word_to_config_on_empty_word(self):
        got = nf(cf.word_to_config(0, 0, 1).term, encode_word(0))
        assert got == cf.make_configuration(0, [[0]], 0, 0, 1).term

    def test_config_to_final(self):
        got = nf(cf.config_to_final(1, 0, 1).term, self.config())
        assert got == run_oracle("C2FC", 2, self.LISTS, 1, 0, 1)

    def test_final_to_word(self):
        final = cf.make_final_configuration(6, self.LISTS, 1, 0, 1).term
        assert nf(cf.final_to_word(1, 0, 1).term, final) == run_oracle("FC2W", 6)

    def test_pop_oracle_knows_few_fields(self):
        with pytest.raises(HypothesisViolated):
            run_oracle("C2PC", 2, self.LISTS, 1, 0, 1, wd.ws0())
