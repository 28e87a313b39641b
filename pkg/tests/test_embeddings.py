"""
Embeddings, coercions and diagonals.
"""

import pytest

from walt_workbench.combinators import embeddings as em
from walt_workbench.combinators import words as wd
from walt_workbench.combinators.encoders import encode_word, tuple_term
from walt_workbench.combinators.oracles import run_oracle
from walt_workbench.combinators.schemas import WORD, etensor, tensor
from walt_workbench.core.errors import ArityMismatch, HypothesisTypeMismatch
from walt_workbench.formulas.types import EagerLolli, Lolli, Par, arrows, par_n
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import apps


def nf(head, *args):
    result, _ = reduce_to_nf(apps(head, *args), relation="beta")
    return result


class TestCoercions:
    def test_coerce_type(self):
        assert em.coerce().derivation.conclusion.ty == Lolli(WORD, Par(WORD))

    @pytest.mark.parametrize("m", [0, 1, 3])
    def test_coerce_power_type(self, m):
        assert em.coerce_power(m).derivation.conclusion.ty == Lolli(WORD, par_n(m, WORD))

    @pytest.mark.parametrize("m, n", [(1, 0), (1, 6), (2, 5), (3, 2)])
    def test_coerce_keeps_the_word(self, m, n):
        assert nf(em.coerce_power(m).term, encode_word(n)) == run_oracle("Coerce^m", m, n)

    def test_negative_exponent(self):
        with pytest.raises(ValueError):
            em.coerce_power(-1)


class TestDiagonals:
    def test_diagonal_type(self):
        assert em.diagonal(3).derivation.conclusion.ty == Lolli(WORD, Par(tensor([WORD] * 3)))

    def test_elementary_diagonal_type(self):
        t = etensor([par_n(2, WORD)] * 2)
        assert em.elementary_diagonal(2, 2).derivation.conclusion.ty == Lolli(WORD, Par(t))

    @pytest.mark.parametrize("k, a", [(1, 4), (2, 0), (2, 5), (3, 3)])
    def test_diagonal_copies(self, k, a):
        assert nf(em.diagonal(k).term, encode_word(a)) == run_oracle("DiagN", k, a)

    def test_elementary_copies(self):
        assert nf(em.elementary_diagonal(1, 2).term, encode_word(6)) == tuple_term([encode_word(6)] * 2)

    def test_no_copies(self):
        with pytest.raises(ArityMismatch):
            em.diagonal(0)

    def test_elementary_needs_a_box(self):
        with pytest.raises(ValueError):
            em.elementary_diagonal(0, 2)


class TestEmbeddings:
    def test_basic(self):
        piece = em.embed_basic(wd.ws1(), 2)
        assert piece.derivation.conclusion.ty == EagerLolli(par_n(2, WORD), par_n(2, WORD))

    def test_basic_dynamics(self):
        piece = em.embed_basic(wd.ws1(), 1)
        expected = nf(run_oracle("EmbB", piece, [encode_word(3)]))
        assert nf(piece.term, encode_word(3)) == expected == encode_word(7)

    def test_linear(self):
        piece = em.embed_linear(wd.branch(), 1, 3)
        assert piece.derivation.conclusion.ty == arrows([Par(WORD)] * 3, Par(WORD))
        assert nf(piece.term, *map(encode_word, (0, 2, 5))) == encode_word(2)

    def test_eager(self):
        inner = em.embed_basic(wd.ws0(), 1)
        piece = em.embed_eager(inner, 2, 1, 0)
        assert piece.derivation.conclusion.ty == EagerLolli(Par(WORD), par_n(3, WORD))
        expected = nf(run_oracle("EmbE", inner, [encode_word(5)]))
        assert nf(piece.term, encode_word(5)) == expected == encode_word(10)

    def test_eager_with_safe_argument(self):
        """Normal words stay at $W, the other arguments move under the new boxes"""
        inner = em.lift(wd.branch(), 1, 3, eager=True)
        piece = em.embed_eager(inner, 1, 1, 2)
        expected_ty = arrows([Par(WORD), par_n(2, WORD), par_n(2, WORD)], par_n(2, WORD), eager=True)
        assert piece.derivation.conclusion.ty == expected_ty
        assert nf(piece.term, *map(encode_word, (1, 8, 9))) == encode_word(9)

    def test_eager_rejects_linear_argument(self):
        with pytest.raises(HypothesisTypeMismatch):
            em.embed_eager(em.embed_linear(wd.ws1(), 1, 1), 1, 1, 0)

    def test_too_many_arguments(self):
        with pytest.raises(ArityMismatch):
            em.lift(wd.ws1(), 1, 2)

    def test_word_piece(self):
        piece = em.word_piece(6, 2)
        assert piece.derivation.conclusion.ty == par_n(2, WORD)
        assert piece.term == encode_word(6)
