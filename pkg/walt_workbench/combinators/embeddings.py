"""
Embeddings, coercions and diagonals.

An embedding moves a closed combinator under boxes: ``[M]^n`` is
``\\x1 .. xq. M x1 .. xq`` with its arguments and its answer n boxes
deeper. Coercions turn a word into the same word under boxes; diagonals
copy a word into a tuple.
"""

from typing import List, Optional, Sequence, Tuple

from walt_workbench.combinators.encoders import (
    boxes, etuple_node, identity, passed, tuple_node, untuple_node, word_node,
)
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import WORD, etensor, tensor
from walt_workbench.combinators.words import ws0, ws1
from walt_workbench.core.errors import ArityMismatch, HypothesisTypeMismatch
from walt_workbench.formulas.types import (
    EagerLolli, Formula, Lolli, Par, par_n,
)
from walt_workbench.judgments.annotated import Ap, Box, Inst, Lam, Node, V, ap

Param = Tuple[Formula, bool]


def split_params(ty: Formula, q: int) -> Tuple[List[Param], Formula]:
    """The first q argument formulae of ``ty`` (with their eagerness) and what remains"""
    params: List[Param] = []
    for _ in range(q):
        if not isinstance(ty, (Lolli, EagerLolli)):
            raise ArityMismatch(f"{ty} takes fewer than {q} arguments")
        params.append((ty.left, isinstance(ty, EagerLolli)))
        ty = ty.right
    return params, ty


def _join(params: Sequence[Param], result: Formula) -> Formula:
    for ty, eager in reversed(list(params)):
        result = EagerLolli(ty, result) if eager else Lolli(ty, result)
    return result


def lift(piece: Piece, n: int, q: int, eager: Optional[bool] = None, name: Optional[str] = None,
         prefix: str = "x") -> Piece:
    """``\\x1 .. xq. $^n[M x1 .. xq]``: q arguments and the answer of M, n boxes deeper.

    Each binder keeps the eagerness of M's argument unless ``eager`` forces it.
    """
    if n < 0:
        raise ValueError(f"negative embedding depth {n}")
    params, result = split_params(piece.ty, q)
    outer: List[Param] = []
    for ty, was_eager in params:
        lifted = par_n(n, ty)
        is_eager = was_eager if eager is None else eager
        if is_eager and not isinstance(lifted, Par):
            raise HypothesisTypeMismatch(f"an eager argument needs a $-formula, got {lifted}")
        outer.append((lifted, is_eager))
    names = [f"{prefix}{i + 1}" for i in range(q)]
    body: Node = boxes(ap(piece.node, *(passed(x, ty) for x, (ty, _) in zip(names, params))), n)
    for x, (ty, is_eager) in reversed(list(zip(names, outer))):
        body = Lam(x, ty, body, is_eager)
    return Piece(name or f"[{piece.name}]^{n}", body, _join(outer, par_n(n, result)), piece.semantics)


def embed_basic(piece: Piece, n: int) -> Piece:
    """``[M]^n_B = \\x. M x`` : $^n L =o $^{m+n} A for M : L -o $^m A"""
    if n < 1 and not isinstance(split_params(piece.ty, 1)[0][0][0], Par):
        raise HypothesisTypeMismatch(f"[{piece.name}]^0_B needs a $-formula argument")
    return lift(piece, n, 1, eager=True, name=f"[{piece.name}]^{n}_B")


def embed_linear(piece: Piece, n: int, p: int) -> Piece:
    """``[M]^n_{L,p} = \\x1 .. xp. M x1 .. xp``, arguments and answer n boxes deeper"""
    return lift(piece, n, p, name=f"[{piece.name}]^{n}_L")


def embed_eager(piece: Piece, n: int, p: int, q: int) -> Piece:
    """``E^n_{p,q}[M] = \\w1 .. wp z1 .. zq. (\\w1 .. wp. M w z) ([Coerce^n]^1_B w1) .. ([Coerce^n]^1_B wp)``

    M takes p normal words ``$W`` and q eager arguments ``$^m L``; the
    normal words stay ``$W`` and are coerced n boxes deeper, everything
    else moves n boxes deeper.
    """
    params, result = split_params(piece.ty, p + q)
    for ty, is_eager in params:
        if not is_eager:
            raise HypothesisTypeMismatch(f"E^{n}_{{{p},{q}}}[{piece.name}]: argument {ty} is not eager")
    for ty, _ in params[:p]:
        if ty != Par(WORD):
            raise HypothesisTypeMismatch(f"E^{n}_{{{p},{q}}}[{piece.name}]: normal argument {ty} is not $W")
    if p == 0:
        return lift(piece, n, q, name=f"E^{n}_{{0,{q}}}[{piece.name}]", prefix="z")
    ws = [f"w{i + 1}" for i in range(p)]
    inner_ws = [f"v{i + 1}" for i in range(p)]
    zs = [f"z{j + 1}" for j in range(q)]
    coerced = embed_basic(coerce_power(n), 1)
    deep_word = par_n(n + 1, WORD)
    call = ap(piece.node, *(Box(V(v)) for v in inner_ws),
              *(passed(z, ty) for z, (ty, _) in zip(zs, params[p:])))
    inner: Node = boxes(call, n)
    for v in reversed(inner_ws):
        inner = Lam(v, deep_word, inner, True)
    body: Node = ap(inner, *(Ap(coerced.node, Box(V(w))) for w in ws))
    for z, (ty, _) in reversed(list(zip(zs, params[p:]))):
        body = Lam(z, par_n(n, ty), body, True)
    for w in reversed(ws):
        body = Lam(w, Par(WORD), body, True)
    outer = [(Par(WORD), True)] * p + [(par_n(n, ty), True) for ty, _ in params[p:]]
    return Piece(f"E^{n}_{{{p},{q}}}[{piece.name}]", body, _join(outer, par_n(n, result)),
                 piece.semantics)


# ---------- coercions ----------

def coerce() -> Piece:
    """``Coerce = \\n. (\\z. z BNum0) (n Ws0 Ws1)`` : W -o $W"""
    z_type = Par(Lolli(WORD, WORD))
    rebuild = Ap(Lam("z", z_type, Box(Ap(V("z"), word_node(0)))),
                 ap(Inst(V("n"), WORD), Box(ws0().node, "!"), Box(ws1().node, "!")))
    return Piece("Coerce", Lam("n", WORD, rebuild), Lolli(WORD, Par(WORD)), lambda n: n)


def coerce_power(m: int) -> Piece:
    """``Coerce^0 = \\x. x`` and ``Coerce^{m+1} = \\x. [Coerce^m]^1_{L,1} (Coerce x)`` : W -o $^m W"""
    if m < 0:
        raise ValueError(f"negative coercion exponent {m}")
    if m == 0:
        return Piece("Coerce^0", identity(WORD), Lolli(WORD, WORD), lambda n: n)
    below = embed_linear(coerce_power(m - 1), 1, 1)
    node = Lam("x", WORD, Ap(below.node, Ap(coerce().node, V("x"))))
    return Piece(f"Coerce^{m}", node, Lolli(WORD, par_n(m, WORD)), lambda n: n)


# ---------- diagonals ----------

def _copies(k: int) -> List[str]:
    return [f"x{i}" for i in range(k)]


def diagonal(k: int) -> Piece:
    """``DiagN k = \\w. (\\z. z <0, .., 0>) (w (\\<x>. <Ws0 x>) (\\<x>. <Ws1 x>))`` : W -o $(W (x) .. (x) W)"""
    if k < 1:
        raise ArityMismatch(f"a diagonal makes at least one copy, asked for {k}")
    t = tensor([WORD] * k)

    def step(successor: Piece) -> Node:
        items = [(Ap(successor.node, V(x)), WORD) for x in _copies(k)]
        return Box(untuple_node([WORD] * k, _copies(k), tuple_node(items), t), "!")

    zeros = tuple_node([(word_node(0), WORD)] * k)
    body = Ap(Lam("z", Par(Lolli(t, t)), Box(Ap(V("z"), zeros))),
              ap(Inst(V("w"), t), step(ws0()), step(ws1())))
    return Piece(f"DiagN {k}", Lam("w", WORD, body), Lolli(WORD, Par(t)))


def elementary_diagonal(m: int, k: int) -> Piece:
    """``DiagMN m k``: as ``DiagN k`` with elementary tuples of ``$^m W`` : W -o $(($^m W) (.) .. (.) ($^m W))"""
    if k < 0:
        raise ArityMismatch(f"negative number of copies {k}")
    if m < 1:
        raise ValueError(f"elementary copies live under at least one box, got m={m}")
    element = par_n(m, WORD)
    t = etensor([element] * k)

    def step(successor: Piece) -> Node:
        lifted = embed_basic(successor, m)
        items = [(Ap(lifted.node, boxes(V(x), m)), element) for x in _copies(k)]
        return Box(untuple_node([element] * k, _copies(k), etuple_node(items), t, elementary=True), "!")

    zeros = etuple_node([(boxes(word_node(0), m), element)] * k)
    body = Ap(Lam("z", Par(Lolli(t, t)), Box(Ap(V("z"), zeros))),
              ap(Inst(V("w"), t), step(ws0()), step(ws1())))
    return Piece(f"DiagMN {m} {k}", Lam("w", WORD, body), Lolli(WORD, Par(t)))


def word_piece(n: int, level: int = 0) -> Piece:
    """``BNum n`` under ``level`` boxes"""
    return Piece(f"BNum {n}", boxes(word_node(n), level), par_n(level, WORD), lambda: n)


