"""
Symbols, states, tapes and configurations of an encoded machine.

Symbols are the projections of ``B_{|alphabet|+2}``: index 0 is the left
border, 1..|alphabet| the alphabet in order and |alphabet|+1 the right
border. States are the projections of ``B_{|states|}``.

A configuration ``\\c. $[\\l r. <L, s, R>]`` keeps both halves of the tape as
delayed chains ``\\y. c M1 (\\y. .. c Mk (\\y. x))``: the left half nearest
the head first down to the left border, the right half from the symbol under
the head out to the right border. Input tapes are lists of the same shape,
``\\c. $[\\x y. c M1 (\\y. .. (\\y. x))]``.
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple

from walt_workbench.combinators.encoders import (
    boolean_node, decode_projection, decode_tuple, tuple_node,
)
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import boolean, tensor
from walt_workbench.core.errors import NotAConfiguration
from walt_workbench.formulas.types import Bang, Formula, Lolli, Par, TyVar, arrows, foralls
from walt_workbench.judgments.annotated import Box, Gen, Lam, Node, V, ap
from walt_workbench.syntax.terms import Abs, App, Term, Var
from walt_workbench.tm.spec import TMSpec

AL = TyVar("al")
BE = TyVar("be")
BB = Lolli(BE, BE)
BOTTOM = 0


@dataclass(frozen=True)
class TMTypes:
    """The formulae of an encoding over ``symbols`` tape symbols and ``states`` states"""
    symbols: int
    states: int

    @classmethod
    def of(cls, spec: TMSpec) -> "TMTypes":
        return cls(len(spec.alphabet), len(spec.states))

    @property
    def width(self) -> int:
        return self.symbols + 2

    @property
    def top(self) -> int:
        return self.symbols + 1

    @property
    def sigma(self) -> Formula:
        return boolean(self.width)

    @property
    def state(self) -> Formula:
        return boolean(self.states)

    def cons(self, al: Formula = AL) -> Formula:
        """``Sigma -o ((be -o be) -o al) -o al``"""
        return arrows([self.sigma, Lolli(BB, al)], al)

    def halves(self, al: Formula = AL) -> Formula:
        """``((be -o be) -o al) (x) S (x) ((be -o be) -o al)``"""
        return tensor([Lolli(BB, al), self.state, Lolli(BB, al)])

    @property
    def configuration(self) -> Formula:
        """C = forall al be. !cons -o $(al -o al -o halves)"""
        return foralls(["al", "be"], Lolli(Bang(self.cons()), Par(arrows([AL, AL], self.halves()))))

    @property
    def tape_list(self) -> Formula:
        """``forall al be. !(Sigma -o (be -o al) -o al) -o $(al -o be -o al)``"""
        cons = arrows([self.sigma, Lolli(BE, AL)], AL)
        return foralls(["al", "be"], Lolli(Bang(cons), Par(arrows([AL, BE], AL))))


def symbol_node(types: TMTypes, index: int) -> Node:
    return boolean_node(types.width, index)


def state_node(types: TMTypes, index: int) -> Node:
    return boolean_node(types.states, index)


def chain(cons: str, items: Sequence[Node], last: Node, delay: Formula = BB) -> Node:
    """``c M1 (\\y. c M2 (.. (\\y. c Mk last)))``"""
    if not items:
        raise ValueError("a chain needs at least one item")
    body: Node = ap(V(cons), items[-1], last)
    for item in reversed(list(items[:-1])):
        body = ap(V(cons), item, Lam("y", delay, body))
    return body


def half(types: TMTypes, cons: str, indices: Sequence[int], end: str) -> Node:
    """``\\y. c M1 (\\y. .. c Mk (\\y. end))`` over the symbols of ``indices``"""
    items = [symbol_node(types, i) for i in indices]
    return Lam("y", BB, chain(cons, items, Lam("y", BB, V(end))))


def configuration_piece(types: TMTypes, left: Sequence[int], state: int, right: Sequence[int]) -> Piece:
    """The configuration with ``left`` nearest-first and ``right`` head-first, borders excluded"""
    body = tuple_node([
        (half(types, "c", list(left) + [BOTTOM], "l"), Lolli(BB, AL)),
        (state_node(types, state), types.state),
        (half(types, "c", list(right) + [types.top], "r"), Lolli(BB, AL)),
    ])
    inner = Lam("l", AL, Lam("r", AL, body))
    node = Gen(Gen(Lam("c", Bang(types.cons()), Box(inner)), "be"), "al")
    return Piece(f"<{list(left)} {state} {list(right)}>", node, types.configuration)


def tape_piece(types: TMTypes, indices: Sequence[int]) -> Piece:
    """The input list of the symbols of ``indices``"""
    cons = arrows([types.sigma, Lolli(BE, AL)], AL)
    if indices:
        items = [symbol_node(types, i) for i in indices]
        body: Node = chain("c", items, Lam("y", BE, V("x")), BE)
    else:
        body = V("x")
    inner = Lam("x", AL, Lam("y", BE, body))
    node = Gen(Gen(Lam("c", Bang(cons), Box(inner)), "be"), "al")
    return Piece(f"[{' '.join(map(str, indices))}]", node, types.tape_list)


def encode_input(spec: TMSpec, symbols: Sequence[str]) -> Piece:
    return tape_piece(TMTypes.of(spec), [spec.symbol_index(a) for a in symbols])


# ---------- read back ----------

class DecodedConfig(NamedTuple):
    left: Tuple[int, ...]
    state: int
    right: Tuple[int, ...]


def _binders(t: Term, k: int) -> Tuple[List[str], Term]:
    names = []
    for _ in range(k):
        if not isinstance(t, Abs):
            raise NotAConfiguration(f"expected {k} binders in {t}")
        names.append(t.binder)
        t = t.body
    if len(set(names)) != k:
        raise NotAConfiguration(f"{t} repeats a binder")
    return names, t


def _read_half(t: Term, cons: str, end: str) -> List[Term]:
    """The items of ``\\y. c M1 (\\y. .. c Mk (\\y. end))``"""
    out = []
    while True:
        if not isinstance(t, Abs) or t.binder in t.body.free_vars:
            raise NotAConfiguration(f"{t} is not a delayed chain")
        body = t.body
        if body == Var(end):
            return out
        if not (isinstance(body, App) and isinstance(body.fun, App) and body.fun.fun == Var(cons)):
            raise NotAConfiguration(f"{body} is not a cons")
        out.append(body.fun.arg)
        t = body.arg


def _symbols(items: List[Term], width: int) -> List[int]:
    out = []
    for item in items:
        try:
            m, i = decode_projection(item)
        except ValueError as e:
            raise NotAConfiguration(str(e)) from None
        if m != width:
            raise NotAConfiguration(f"symbol {item} has {m} projections, expected {width}")
        out.append(i)
    return out


def _width(items: List[Term]) -> int:
    try:
        return decode_projection(items[-1])[0]
    except (ValueError, IndexError):
        raise NotAConfiguration("a tape half has no border") from None


def decode_config(t: Term) -> DecodedConfig:
    """Left half nearest-first, the state index and the right half head-first, borders dropped"""
    (c, l, r), body = _binders(t, 3)
    try:
        parts = decode_tuple(body)
    except ValueError as e:
        raise NotAConfiguration(str(e)) from None
    if len(parts) != 3:
        raise NotAConfiguration(f"{body} has {len(parts)} components, expected 3")
    left_items = _read_half(parts[0], c, l)
    right_items = _read_half(parts[2], c, r)
    width = _width(left_items)
    left = _symbols(left_items, width)
    right = _symbols(right_items, width)
    top = width - 1
    if left[-1] != BOTTOM or right[-1] != top:
        raise NotAConfiguration("a tape half does not end at its border")
    if any(not 0 < i < top for i in left[:-1] + right[:-1]):
        raise NotAConfiguration("a border inside the tape")
    try:
        _, state = decode_projection(parts[1])
    except ValueError as e:
        raise NotAConfiguration(str(e)) from None
    return DecodedConfig(tuple(left[:-1]), state, tuple(right[:-1]))


def decode_tape(t: Term) -> List[int]:
    """The symbol indices of an input list"""
    (c, x, y), body = _binders(t, 3)
    if body == Var(x):
        return []
    items = _read_half(Abs(y, body), c, x)
    return _symbols(items, _width(items))
