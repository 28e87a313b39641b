"""
Compilation of QlSRN into WALT.

``embed_piece`` maps a function symbol of arity (k, l) to a combinator of
formula ``($W)^k =o ($^m W)^l =o $^m W`` together with its exponent m.
``interpret_piece`` compiles a closed term, after its variables have been
replaced by numerals, into a combinator of formula ``$^v W`` that reduces
to the word the term denotes.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Iterable, List, Mapping, Optional, Tuple

from walt_workbench.combinators import words
from walt_workbench.combinators.embeddings import embed_basic, embed_eager, lift
from walt_workbench.combinators.encoders import boxes, decode_word, passed, word_node
from walt_workbench.combinators.iteration import composition, iterator
from walt_workbench.combinators.configurations import transition_function_type
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import WORD
from walt_workbench.core.errors import UndefinedEmbedding
from walt_workbench.core.logging_config import get_logger
from walt_workbench.core.models import Trace
from walt_workbench.formulas.types import Formula, Par, arrows, par_n
from walt_workbench.judgments.annotated import Box, Node, ap, lam
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.qlsrn.evaluate import eval_q
from walt_workbench.qlsrn.functions import (
    Apply, Branch, Comp, Pred, Proj, QFunction, QTerm, Rec, Suc, Var, Zero,
    free_variables, require_linear, substitute,
)
from walt_workbench.qlsrn.printer import print_function, print_term
from walt_workbench.qlsrn.weight import weight
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import Term

logger = get_logger("embedding", "qlsrn")


def embedded_type(f: QFunction, m: Optional[int] = None) -> Tuple[Formula, int]:
    """``($W)^k =o ($^m W)^l =o $^m W`` with the exponent the compilation of f witnesses"""
    if m is None:
        m = embed_piece(f)[1]
    k, l = f.arity
    return arrows([Par(WORD)] * k + [par_n(m, WORD)] * l, par_n(m, WORD), eager=True), m


def _binders(names: List[str], ty: Formula):
    return [(x, ty, True) for x in names]


def _raise_to(piece: Piece, m: int, p: int, normal: int, safe: int) -> Piece:
    """Move a compiled part from exponent m to p"""
    return embed_eager(piece, p - m, normal, safe) if p > m else piece


def _constant(f: Zero) -> Piece:
    names = [f"x{i + 1}" for i in range(f.k + f.l)]
    node = lam(_binders(names, Par(WORD)), Box(word_node(0)))
    return Piece(print_function(f), node, embedded_type(f, 1)[0], lambda *args: 0)


def _projection(f: Proj) -> Piece:
    names = [f"x{i + 1}" for i in range(f.k + f.l)]
    node = lam(_binders(names, Par(WORD)), passed(names[f.i - 1], Par(WORD)))
    return Piece(print_function(f), node, embedded_type(f, 1)[0], lambda *args: args[f.i - 1])


def _composition(f: Comp) -> Tuple[Piece, int]:
    outer, m_f = embed_piece(f.f)
    gs = [embed_piece(g) for g in f.gs]
    hs = [embed_piece(h) for h in f.hs]
    p = max([m_f] + [m for _, m in gs] + [m for _, m in hs])
    outer = _raise_to(outer, m_f, p, len(f.gs), len(f.hs))
    normal = [_raise_to(g, m, p, f.k, 0) for g, m in gs]
    safe = [_raise_to(h, m, p, f.k, part.safe) for (h, m), part in zip(hs, f.hs)]
    return composition(f.k, p, outer, normal, safe), 2 * p + 1


def _recursion(f: Rec) -> Tuple[Piece, int]:
    k, l = f.g.arity
    g, m = embed_piece(f.g)
    h0, m0 = embed_piece(f.h0)
    h1, m1 = embed_piece(f.h1)
    p = max(m, m0, m1)
    normals = [f"n{i}" for i in range(k + 1)]
    safes = [f"s{j + 1}" for j in range(l)]
    deep = par_n(m, WORD)
    body: Node = ap(g.node, *(passed(x, Par(WORD)) for x in normals[1:]),
                    *(passed(x, deep) for x in safes))
    base_node = lam(_binders(normals, Par(WORD)) + _binders(safes, deep) + [("r", deep, True)], body)
    semantics = None if g.semantics is None else (lambda *args: g.semantics(*args[1:-1]))
    base = Piece(f"G[{g.name}]", base_node, transition_function_type(k, l, m), semantics)
    steps = [_raise_to(h, mi, p, k + 1, l + 1) for h, mi in ((h0, m0), (h1, m1))]
    return iterator(k, l, p, steps[0], steps[1], _raise_to(base, m, p, k + 1, l + 1)), p + 4


@lru_cache(maxsize=None)
def embed_piece(f: QFunction) -> Tuple[Piece, int]:
    """The compiled combinator of f and its exponent m"""
    if isinstance(f, Zero):
        result = (_constant(f), 1)
    elif isinstance(f, Suc):
        result = (embed_basic(words.ws1() if f.digit else words.ws0(), 1), 1)
    elif isinstance(f, Pred):
        result = (embed_basic(words.predecessor(), 1), 1)
    elif isinstance(f, Proj):
        result = (_projection(f), 1)
    elif isinstance(f, Branch):
        result = (lift(words.branch(), 1, 3, eager=True, name="[B]^1"), 1)
    elif isinstance(f, Comp):
        result = _composition(f)
    elif isinstance(f, Rec):
        result = _recursion(f)
    else:
        raise UndefinedEmbedding(f"no embedding for {f!r}")
    logger.debug(f"{print_function(f)} compiles with m={result[1]}")
    return result


def embed_fn(f: QFunction) -> Tuple[Term, Derivation, int]:
    piece, m = embed_piece(f)
    return piece.term, piece.derivation, m


# ---------- terms ----------

def _compile(t: QTerm) -> Tuple[Node, int]:
    if isinstance(t, Var):
        raise UndefinedEmbedding(f"{t.name} is not bound")
    assert isinstance(t, Apply)
    f, m = embed_piece(t.f)
    k, l = t.f.arity
    normals = [_compile(a) for a in t.normals]
    safes = [_compile(a) for a in t.safes]
    u = max([m] + [p for _, p in normals])
    v = max([u - 1 + m] + [q for _, q in safes])
    inner = lift(f, u - 1, k + l) if u > 1 else f
    node = ap(inner.node, *(boxes(a, u - p) for a, p in normals))
    if v - u + 1 - m > 0:
        applied = Piece(inner.name, node, arrows([par_n(u - 1 + m, WORD)] * l, par_n(u - 1 + m, WORD),
                                                 eager=True))
        node = lift(applied, v - u + 1 - m, l).node
    return ap(node, *(boxes(a, v - q) for a, q in safes)), v


def interpret_piece(t: QTerm, env: Mapping[str, int] = None) -> Tuple[Piece, int]:
    """The combinator of ``t`` with its variables replaced by the numerals of ``env``"""
    env = env or {}
    missing = free_variables(t) - set(env)
    if missing:
        raise UndefinedEmbedding(f"open term; unbound {sorted(missing)}")
    closed = require_linear(substitute(t, env))
    node, v = _compile(closed)
    value = eval_q(closed)
    return Piece(print_term(t), node, par_n(v, WORD), lambda: value), v


def interpret(t: QTerm, env: Mapping[str, int] = None) -> Term:
    return interpret_piece(t, env)[0].term


def schemes(t) -> int:
    """How many compositions and recursions a function symbol or a term contains"""
    if isinstance(t, Rec):
        return 1 + sum(map(schemes, (t.g, t.h0, t.h1)))
    if isinstance(t, Comp):
        return 1 + sum(map(schemes, (t.f, *t.gs, *t.hs)))
    if isinstance(t, Apply):
        return sum(map(schemes, (t.f, *t.normals, *t.safes)))
    return 0


@dataclass(frozen=True)
class WeightReport:
    """The exponent of a compiled term next to its weight

    The weight bounds the exponent of closed terms built from base functions
    and numerals. Compiled schemes outgrow it: with p the exponent of its
    parts, a composition sits at 2p+1 and a recursion at p+4, while the
    weight only triples or doubles. Function symbols are reported but never
    violate it; the base ones have weight 0 and exponent 1.
    """
    m: int
    weight: Fraction
    schemes: int = 0
    closed: bool = True

    @property
    def within(self) -> bool:
        return self.m <= ceil(self.weight)

    @property
    def scheme_excess(self) -> bool:
        """Above the weight, with a composition or a recursion to account for it"""
        return not self.within and self.schemes > 0

    @property
    def violated(self) -> bool:
        return self.closed and not self.within and self.schemes == 0


def weight_report(t, env: Mapping[str, int] = None) -> WeightReport:
    if isinstance(t, QFunction):
        return WeightReport(embed_piece(t)[1], weight(t), schemes(t), closed=False)
    closed = substitute(t, env or {})
    return WeightReport(interpret_piece(closed)[1], weight(closed), schemes(closed))


def run_compiled(t: QTerm, env: Mapping[str, int] = None, budget: Optional[int] = None,
                 relation: str = "beta") -> Tuple[int, Trace]:
    """Compile ``t``, normalize it and read the word back"""
    piece, v = interpret_piece(t, env)
    result, trace = reduce_to_nf(piece.term, budget=budget, relation=relation)
    logger.info(f"{piece.name} at $^{v}W: {trace.step_count} steps")
    return decode_word(result), trace


def soundness_mismatches(terms: Iterable[QTerm], budget: Optional[int] = None) -> List[Tuple[QTerm, int, int]]:
    """The terms whose compiled normal form differs from their value, with both answers"""
    out = []
    for t in terms:
        expected = eval_q(t)
        got, _ = run_compiled(t, budget=budget)
        if got != expected:
            logger.warning(f"{print_term(t)}: evaluates to {expected}, compiles to {got}")
            out.append((t, expected, got))
    return out
