"""
Combinators on strings and words: successors, predecessor, branching, the
canonicalizer MkC and the recastings between words, strings and lists.

Every builder returns a ``Piece``; the annotations fix the boxes, the
instantiations and the generalizations the derivation uses.
"""

from walt_workbench.combinators.encoders import (
    WORD_BINDERS, boolean_node, boxes, identity, list_node, projection_node, tuple_node,
    untuple_node, word_node,
)
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import NAT, WORD, boolean, list_of, tensor
from walt_workbench.formulas.types import (
    Bang, EagerLolli, Formula, Lolli, Par, TyVar, arrows, fresh_tyvar, par_depth, par_n,
)
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap, lam

A = TyVar("a")
B2 = boolean(2)
WW = Lolli(WORD, WORD)


def _arrow(a: Formula) -> Formula:
    return Lolli(a, a)


def _steps(a: Formula):
    return [(WORD_BINDERS[0], Bang(_arrow(a))), (WORD_BINDERS[1], Bang(_arrow(a)))]


def _iterate_word(n: Node, a: Formula, x: Formula, step0: Node, step1: Node, z_type: Formula,
                  body: Node) -> Node:
    """``(\\z. body) (n @[x] step0 step1)`` with ``z : z_type``"""
    return Ap(Lam("z", z_type, body), ap(Inst(n, x), step0, step1))


def _word_fn(name: str, body: Node, semantics=None) -> Piece:
    return Piece(name, Lam("n", WORD, body), WW, semantics)


# ---------- strings ----------

def successor_on_strings() -> Piece:
    """``Ss = \\n f. (\\z x. f (z x)) (n f)`` : N -o N"""
    a = A
    inner = Box(Lam("x", a, Ap(V("f"), Ap(V("z"), V("x")))))
    body = Gen(Lam("f", Bang(_arrow(a)),
                   Ap(Lam("z", Par(_arrow(a)), inner), Ap(Inst(V("n"), a), Box(V("f"), "!")))), "a")
    return Piece("Ss", Lam("n", NAT, body), Lolli(NAT, NAT), lambda n: n + 1)


# ---------- words ----------

def ws1() -> Piece:
    """``Ws1 = \\n 0 1. (\\z y. 1 (z y)) (n 0 1)``"""
    a = A
    inner = Box(Lam("y", a, Ap(V("s1"), Ap(V("z"), V("y")))))
    body = Gen(lam(_steps(a), _iterate_word(
        V("n"), a, a, Box(V("s0"), "!"), Box(V("s1"), "!"), Par(_arrow(a)), inner)), "a")
    return _word_fn("Ws1", body, lambda n: 2 * n + 1)


def _x(a: Formula) -> Formula:
    """The pairs MkC threads through a word: a boolean and an accumulator"""
    return tensor([B2, a])


def bmkc(a: Formula = A) -> Piece:
    """``BMkC = \\y. <pi0, y>`` : a -o B2 (x) a"""
    node = Lam("y", a, tuple_node([(boolean_node(2, 0), B2), (V("y"), a)]))
    return Piece("BMkC", node, Lolli(a, _x(a)))


def smkc0(a: Formula = A) -> Piece:
    """``SMkC0 = \\x. \\<p r>. (\\<p1 p2>. <p1, p2 <I, x> r>) (p <<pi0, pi0>, <pi1, pi1>>)``

    A 0 is postponed: it is applied only once a 1 above it is met.
    """
    x_ty = _x(a)
    bb = tensor([B2, B2])
    pi0, pi1 = boolean_node(2, 0), boolean_node(2, 1)
    table = tuple_node([(tuple_node([(pi0, B2), (pi0, B2)]), bb),
                        (tuple_node([(pi1, B2), (pi1, B2)]), bb)])
    choice = ap(Inst(V("p2"), _arrow(a)), tuple_node([(identity(a), _arrow(a)), (V("x"), _arrow(a))]))
    rebuilt = tuple_node([(V("p1"), B2), (Ap(choice, V("r")), a)])
    split = Ap(untuple_node([B2, B2], ["p1", "p2"], rebuilt, x_ty), Ap(Inst(V("p"), bb), table))
    node = Lam("x", Bang(_arrow(a)), Box(untuple_node([B2, a], ["p", "r"], split, x_ty), "!"))
    return Piece("SMkC0", node, Lolli(Bang(_arrow(a)), Bang(_arrow(x_ty))))


def smkc1(a: Formula = A) -> Piece:
    """``SMkC1 = \\x. \\<p r>. <pi1, x r>``"""
    x_ty = _x(a)
    rebuilt = tuple_node([(boolean_node(2, 1), B2), (Ap(V("x"), V("r")), a)])
    node = Lam("x", Bang(_arrow(a)), Box(untuple_node([B2, a], ["p", "r"], rebuilt, x_ty), "!"))
    return Piece("SMkC1", node, Lolli(Bang(_arrow(a)), Bang(_arrow(x_ty))))


def _mkc_body(word: Node) -> Node:
    """``MkC`` applied to ``word``, which may mention the generalized ``a`` of the caller"""
    a = A
    x_ty = _x(a)
    inner = Box(Lam("y", a, Ap(projection_node(1, [B2, a]),
                                Ap(V("z"), Ap(bmkc(a).node, V("y"))))))
    return Ap(Lam("z", Par(_arrow(x_ty)), inner),
              ap(Inst(word, x_ty), Ap(smkc0(a).node, Box(V("s0"), "!")),
                 Ap(smkc1(a).node, Box(V("s1"), "!"))))


def mkc() -> Piece:
    """``MkC = \\n 0 1. (\\z y. (\\<x y>. y) (z (BMkC y))) (n (SMkC0 0) (SMkC1 1))``

    Drops the 0s above the most significant 1.
    """
    body = Gen(lam(_steps(A), _mkc_body(V("n"))), "a")
    return _word_fn("MkC", body, lambda n: n)


def ws0() -> Piece:
    """``Ws0 = \\n. MkC (\\0 1. (\\z y. 0 (z y)) (n 0 1))``"""
    a = A
    inner = Box(Lam("y", a, Ap(V("s0"), Ap(V("z"), V("y")))))
    shifted = Gen(lam(_steps(a), _iterate_word(
        V("n"), a, a, Box(V("s0"), "!"), Box(V("s1"), "!"), Par(_arrow(a)), inner)), "a")
    return _word_fn("Ws0", Ap(mkc().node, shifted), lambda n: 2 * n)


def _pair_y(a: Formula) -> Formula:
    return tensor([_arrow(a), a])


def step_p(a: Formula = A) -> Piece:
    """``StepP = \\x. \\<u v>. <x, u v>`` : (a -o a) -o Y -o Y"""
    y = _pair_y(a)
    body = tuple_node([(V("x"), _arrow(a)), (Ap(V("u"), V("v")), a)])
    return Piece("StepP", Lam("x", _arrow(a), untuple_node([_arrow(a), a], ["u", "v"], body, y)),
                 Lolli(_arrow(a), _arrow(y)))


def base_p(a: Formula = A) -> Piece:
    """``BaseP = \\x. <\\x. x, x>`` : a -o Y"""
    return Piece("BaseP", Lam("x", a, tuple_node([(identity(a), _arrow(a)), (V("x"), a)])),
                 Lolli(a, _pair_y(a)))


def predecessor() -> Piece:
    """``P = \\n. \\0 1. (\\z y. pi1 (z (BaseP y))) (n (StepP 0) (StepP 1))``: drops the last digit"""
    a = A
    y = _pair_y(a)
    inner = Box(Lam("y", a, Ap(projection_node(1, [_arrow(a), a]),
                                Ap(V("z"), Ap(base_p(a).node, V("y"))))))
    step = step_p(a).node
    body = Gen(lam(_steps(a), _iterate_word(
        V("n"), a, y, Box(Ap(step, V("s0")), "!"), Box(Ap(step, V("s1")), "!"),
        Par(_arrow(y)), inner)), "a")
    return _word_fn("P", body, lambda n: n // 2)


def branch() -> Piece:
    """``B = \\n. \\a b. \\0 1. (\\w. \\z1 z2. w pi0 <z1, z2>) (n (\\x. pi1) (\\x. pi1)) (a 0 1) (b 0 1)``

    The second argument on the empty word, the third otherwise.
    """
    a = A
    pi0, pi1 = boolean_node(2, 0), boolean_node(2, 1)
    chosen = ap(Inst(Ap(V("w"), pi0), _arrow(a)),
                tuple_node([(V("z1"), _arrow(a)), (V("z2"), _arrow(a))]))
    select = lam([("w", Par(_arrow(B2))), ("z1", Par(_arrow(a))), ("z2", Par(_arrow(a)))],
                 Box(chosen))
    always1 = Box(Lam("x", B2, pi1), "!")

    def spread(word: str) -> Node:
        return ap(Inst(V(word), a), Box(V("s0"), "!"), Box(V("s1"), "!"))

    body = Gen(lam(_steps(a), ap(select, ap(Inst(V("n"), B2), always1, always1),
                                 spread("u"), spread("v"))), "a")
    node = lam([("n", WORD), ("u", WORD), ("v", WORD)], body)
    return Piece("B", node, arrows([WORD, WORD, WORD], WORD),
                 lambda n, u, v: u if n == 0 else v)


# ---------- recasting ----------

def word_to_string() -> Piece:
    """``W2S = \\n f. (\\z y. z y) (n f f)``: as many steps as digits"""
    a = A
    inner = Box(Lam("y", a, Ap(V("z"), V("y"))))
    body = Gen(Lam("f", Bang(_arrow(a)), _iterate_word(
        V("n"), a, a, Box(V("f"), "!"), Box(V("f"), "!"), Par(_arrow(a)), inner)), "a")
    return Piece("W2S", Lam("n", WORD, body), Lolli(WORD, NAT), lambda n: n.bit_length())


def string_to_list(element: Formula = Par(TyVar("A"))) -> Piece:
    """``S2L = \\k n c. (\\z x. z (\\f. x) I) (n (\\l f. c k (l I)))`` : $$A =o N -o L $A

    ``S2L M U_m`` is the list of m copies of M.
    """
    if not isinstance(element, Par):
        raise ValueError(f"list elements need a $-formula, got {element}")
    a = TyVar(fresh_tyvar("a", element.free_tyvars))
    t = Lolli(_arrow(a), a)
    cons = Bang(EagerLolli(element, _arrow(a)))
    inner = Box(Lam("x", a, ap(V("z"), Lam("f", _arrow(a), V("x")), identity(a))))
    copy = Box(lam([("l", t), ("f", _arrow(a))],
                   ap(V("c"), boxes(V("k"), par_depth(element)), Ap(V("l"), identity(a)))), "!")
    body = Gen(Lam("c", cons, Ap(Lam("z", Par(_arrow(t)), inner), Ap(Inst(V("n"), t), copy))), a.name)
    node = lam([("k", Par(element), True), ("n", NAT)], body)
    return Piece("S2L", node, EagerLolli(Par(element), Lolli(NAT, list_of(element))))


def word_list(items, level: int) -> Piece:
    """``[BNum a1, ..., BNum ar]`` at ``L $^level W``"""
    element = par_n(level, WORD)
    node = list_node([boxes(word_node(v), level) for v in items], element)
    return Piece(f"[{', '.join(map(str, items))}]", node, list_of(element))


def word_identity() -> Piece:
    """``I = \\x. x`` : W -o W"""
    return Piece("I", identity(WORD), WW, lambda n: n)
