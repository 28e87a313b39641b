"""
String arithmetic for the clock of an encoded machine.

``npoly(e, K)`` takes the length n of the input, as a string, to the string
``K n^(2^e)`` under 4e boxes: squaring e times doubles the exponent each
round, one multiplication brings in K, and string coercions pad the result
to the depth the tape coercions reach.
"""

from functools import lru_cache
from typing import Tuple

from walt_workbench.combinators.embeddings import embed_basic, lift
from walt_workbench.combinators.encoders import open_tuple, string_node, tuple_node
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import NAT, tensor
from walt_workbench.combinators.words import successor_on_strings
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import Bang, Lolli, Par, TyVar, arrows, par_n
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.syntax.terms import Term

logger = get_logger("clock", "tm")

A = TyVar("a")
# a copyable string next to a linear one
SHARED = tensor([Bang(NAT), NAT])


def _iterate(n: Node, instance, step: Node, z_type, body: Node) -> Node:
    """``(\\z. body) (n @[instance] step)``"""
    return Ap(Lam("z", z_type, body), Ap(Inst(n, instance), step))


def plus() -> Piece:
    """``Plus = \\m n f. (\\x y. $[\\u. x (y u)]) (m f) (n f)`` : N -o N -o N"""
    arrow = Lolli(A, A)
    inner = Lam("x", Par(arrow), Lam("y", Par(arrow), Box(Lam("u", A, Ap(V("x"), Ap(V("y"), V("u")))))))
    applied = ap(inner, Ap(Inst(V("m"), A), Box(V("f"), "!")), Ap(Inst(V("n"), A), Box(V("f"), "!")))
    node = Lam("m", NAT, Lam("n", NAT, Gen(Lam("f", Bang(arrow), applied), "a")))
    return Piece("Plus", node, arrows([NAT, NAT], NAT), lambda m, n: m + n)


def times() -> Piece:
    """``Times = \\m n. (\\z. $[z U0]) (m ![Plus n])`` : N -o !N -o $N; m copies of n added to 0"""
    step = Box(Lam("y", NAT, ap(plus().node, V("n"), V("y"))), "!")
    body = _iterate(V("m"), NAT, step, Par(Lolli(NAT, NAT)), Box(Ap(V("z"), string_node(0))))
    node = Lam("m", NAT, Lam("n", Bang(NAT), body))
    return Piece("Times", node, Lolli(NAT, Lolli(Bang(NAT), Par(NAT))), lambda m, n: m * n)


def string_coerce() -> Piece:
    """``\\m. (\\z. $[z U0]) (m !Ss)`` : N -o $N"""
    body = _iterate(V("m"), NAT, Box(successor_on_strings().node, "!"), Par(Lolli(NAT, NAT)),
                    Box(Ap(V("z"), string_node(0))))
    return Piece("CoerceN", Lam("m", NAT, body), Lolli(NAT, Par(NAT)), lambda m: m)


def shared_diagonal() -> Piece:
    """``\\m. (\\z. $[z <!U0, U0>]) (m !(\\<x, y>. <![Ss x], Ss y>))`` : N -o $(!N (x) N)"""
    ss = successor_on_strings().node
    step = Box(Lam("w", SHARED, open_tuple(
        V("w"), [Bang(NAT), NAT], ["x", "y"],
        tuple_node([(Box(Ap(ss, V("x")), "!"), Bang(NAT)), (Ap(ss, V("y")), NAT)]), SHARED)), "!")
    base = tuple_node([(Box(string_node(0), "!"), Bang(NAT)), (string_node(0), NAT)])
    body = _iterate(V("m"), SHARED, step, Par(Lolli(SHARED, SHARED)), Box(Ap(V("z"), base)))
    return Piece("DiagS", Lam("m", NAT, body), Lolli(NAT, Par(SHARED)))


def square() -> Piece:
    """``\\m. (\\d. $[let <x, y> = d in Times y ![x]]) (DiagS m)`` : N -o $$N"""
    opened = open_tuple(V("d"), [Bang(NAT), NAT], ["x", "y"],
                        ap(times().node, V("y"), Box(V("x"), "!")), Par(NAT))
    body = Ap(Lam("d", Par(SHARED), Box(opened)), Ap(shared_diagonal().node, V("m")))
    return Piece("Sq", Lam("m", NAT, body), Lolli(NAT, par_n(2, NAT)), lambda m: m * m)


@lru_cache(maxsize=None)
def squares(e: int) -> Piece:
    """``Sq^e`` : N -o $^{2e} N, the 2^e-th power"""
    if e < 1:
        raise ValueError(f"squaring at least once, got e={e}")
    if e == 1:
        return square()
    below = squares(e - 1)
    outer = lift(square(), 2 * (e - 1), 1)
    node = Lam("m", NAT, Ap(outer.node, Ap(below.node, V("m"))))
    return Piece(f"Sq^{e}", node, Lolli(NAT, par_n(2 * e, NAT)), lambda m: m ** (2 ** e))


def scale(k: int) -> Piece:
    """``\\z. Times z ![U_k]`` : N -o $N"""
    node = Lam("z", NAT, ap(times().node, V("z"), Box(string_node(k), "!")))
    return Piece(f"x{k}", node, Lolli(NAT, Par(NAT)), lambda m: m * k)


@lru_cache(maxsize=None)
def npoly_normal(e: int, k: int) -> Piece:
    """``K n^(2^e)`` : N -o $^{4e-1} N"""
    body: Node = Ap(lift(scale(k), 2 * e, 1).node, Ap(squares(e).node, V("m")))
    depth = 2 * e + 1
    while depth < 4 * e - 1:
        body = Ap(lift(string_coerce(), depth, 1).node, body)
        depth += 1
    return Piece(f"NPoly[{e}, {k}]", Lam("m", NAT, body), Lolli(NAT, par_n(4 * e - 1, NAT)),
                 lambda m: k * m ** (2 ** e))


def npoly(e: int, k: int) -> Piece:
    """``[npoly_normal]^1_B`` : $N =o $^{4e} N"""
    piece = embed_basic(npoly_normal(e, k), 1)
    logger.debug(f"clock K={k} e={e}: {piece.ty}")
    return piece


def build_npoly(e: int, k: int) -> Tuple[Term, Derivation]:
    piece = npoly(e, k)
    return piece.term, piece.derivation
