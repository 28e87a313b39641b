"""
One step of an encoded machine, ``delta = \\n. P2C (C2P n)`` : C -o C.

``C2P`` rebuilds both halves of a configuration so that applying a half to
the identity exposes its first symbol, ``<M1, F, rest>``, where ``rest`` is
the remaining chain with the original constructor. ``P2C`` reads the state
and the two symbols around the head, selects the matching triple of the
lookup table and puts the halves back together with it.

The lookup table is indexed by the symbol under the head, then the state,
then the symbol left of the head. Each entry is a triple ``<hl, s', hr>``;
``hl`` and ``hr`` prepend symbols to the remaining halves.
"""

from typing import List, Optional, Sequence, Tuple

from walt_workbench.combinators.encoders import identity, open_tuple, tuple_node
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import tensor
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import Bang, Formula, Lolli, Par, arrows, foralls
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap, erase
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.syntax.terms import Term
from walt_workbench.tm.spec import Move, TMSpec
from walt_workbench.tm.tapes import AL, BB, BE, BOTTOM, TMTypes, chain, state_node, symbol_node

logger = get_logger("transition", "tm")

Triple = Tuple[Tuple[int, ...], int, Tuple[int, ...]]


# ---------- formulae ----------

def step_fn(types: TMTypes) -> Formula:
    """T = cons -o Sigma -o al -o al"""
    return arrows([types.cons(), types.sigma, AL], AL)


def exposed(types: TMTypes) -> Formula:
    """U = Sigma (x) T (x) al"""
    return tensor([types.sigma, step_fn(types), AL])


def prepend(types: TMTypes) -> Formula:
    """D = ((be -o be) -o al) -o (be -o be) -o al"""
    return Lolli(Lolli(BB, AL), Lolli(BB, AL))


def entry(types: TMTypes) -> Formula:
    return tensor([prepend(types), types.state, prepend(types)])


def column(types: TMTypes) -> Formula:
    return tensor([entry(types)] * types.width)


def row(types: TMTypes) -> Formula:
    return tensor([column(types)] * types.states)


def lookup_type(types: TMTypes) -> Formula:
    return tensor([row(types)] * types.width)


def pre_configuration(types: TMTypes) -> Formula:
    """P = forall al be. !cons -o $(al -o al -o ((be -o be) -o U) (x) S (x) ((be -o be) -o U))"""
    halves = types.halves(exposed(types))
    return foralls(["al", "be"], Lolli(Bang(types.cons()), Par(arrows([AL, AL], halves))))


# ---------- the table ----------

def triple(spec: TMSpec, head: int, state: int, left: int) -> Triple:
    """Symbols prepended to the left and right halves and the next state.

    ``head`` and ``left`` are symbol indices; the right border under the head
    reads as a blank and is put back behind the written symbol.
    """
    top = len(spec.alphabet) + 1
    accept = spec.state_index(spec.accept)
    if left == top or head == BOTTOM:
        return (), accept, ()
    if spec.states[state] == spec.accept:
        return (left,), state, (head,)
    symbol = spec.blank if head == top else spec.alphabet[head - 1]
    move, written, target = spec.action(spec.states[state], symbol)
    w = spec.symbol_index(written)
    tail = (top,) if head == top else ()
    if move is Move.RIGHT:
        return (w, left), spec.state_index(target), tail
    if move is Move.LEFT and left == BOTTOM:
        return (BOTTOM,), spec.state_index(target), (spec.symbol_index(spec.blank), w) + tail
    if move is Move.LEFT:
        return (), spec.state_index(target), (left, w) + tail
    return (left,), spec.state_index(target), (w,) + tail


def _prepender(types: TMTypes, cons: str, indices: Sequence[int]) -> Node:
    """``\\t y. c a1 (\\y. .. c ak t)``, the identity when nothing is prepended"""
    if not indices:
        return identity(Lolli(BB, AL), "t")
    items = [symbol_node(types, i) for i in indices]
    return Lam("t", Lolli(BB, AL), Lam("y", BB, chain(cons, items, V("t"))))


def _entry_node(types: TMTypes, t: Triple, cons: str) -> Node:
    left, state, right = t
    return tuple_node([
        (_prepender(types, cons, left), prepend(types)),
        (state_node(types, state), types.state),
        (_prepender(types, cons, right), prepend(types)),
    ])


def lookup_node(spec: TMSpec, cons: Optional[str] = "c") -> Tuple[Node, List[str]]:
    """The table over the constructor ``cons``; with ``cons=None`` every entry gets its own.

    Returns the node and the constructor names it uses.
    """
    types = TMTypes.of(spec)
    names: List[str] = []
    rows = []
    for head in range(types.width):
        columns = []
        for state in range(types.states):
            entries = []
            for left in range(types.width):
                name = cons or f"c{len(names)}"
                if name not in names:
                    names.append(name)
                entries.append((_entry_node(types, triple(spec, head, state, left), name), entry(types)))
            columns.append((tuple_node(entries), column(types)))
        rows.append((tuple_node(columns), row(types)))
    return tuple_node(rows), names


def lookup_piece(spec: TMSpec) -> Piece:
    """The table with one linear constructor per entry"""
    types = TMTypes.of(spec)
    node, names = lookup_node(spec, None)
    return Piece(f"Lookup[{spec.name}]", node, lookup_type(types), free={c: types.cons() for c in names})


# ---------- C2P ----------

def _f0(types: TMTypes) -> Node:
    """``\\k u v. v``"""
    return Lam("k", types.cons(), Lam("u", types.sigma, Lam("v", AL, V("v"))))


def _f1(types: TMTypes) -> Node:
    """``\\k u v. k u (\\y. v)``"""
    return Lam("k", types.cons(), Lam("u", types.sigma, Lam("v", AL, ap(
        V("k"), V("u"), Lam("y", BB, V("v"))))))


def _border(types: TMTypes, index: int, end: str) -> Node:
    """``<border, F0, end>``"""
    return tuple_node([(symbol_node(types, index), types.sigma), (_f0(types), step_fn(types)),
                       (V(end), AL)])


def _expose(types: TMTypes) -> Node:
    """``\\e g. let <h, f, t> = g I in <e, F1, f c h t>``: the constructor C2P iterates"""
    u = exposed(types)
    parts = [types.sigma, step_fn(types), AL]
    rebuilt = tuple_node([(V("e"), types.sigma), (_f1(types), step_fn(types)),
                          (ap(V("f"), V("c"), V("h"), V("t")), AL)])
    body = open_tuple(Ap(V("g"), identity(BE, "i")), parts, ["h", "f", "t"], rebuilt, u)
    return Lam("e", types.sigma, Lam("g", Lolli(BB, u), body))


def c2p(types: TMTypes) -> Piece:
    """``C2P = \\n c. (\\z. $[\\l r. z <bottom, F0, l> <top, F0, r>]) (n ![S c])`` : C -o P"""
    u = exposed(types)
    halves = types.halves(u)
    inner = Box(Lam("l", AL, Lam("r", AL, ap(V("z"), _border(types, BOTTOM, "l"),
                                               _border(types, types.top, "r")))))
    applied = Ap(Lam("z", Par(arrows([u, u], halves)), inner),
                 Ap(Inst(Inst(V("n"), u), BE), Box(_expose(types), "!")))
    node = Lam("n", types.configuration, Gen(Gen(Lam("c", Bang(types.cons()), applied), "be"), "al"))
    return Piece("C2P", node, Lolli(types.configuration, pre_configuration(types)))


# ---------- P2C ----------

def p2c(spec: TMSpec) -> Piece:
    """``P2C = \\p c. (\\z. $[\\l r. ..]) (p ![c])`` : P -o C.

    Under the box the two halves are applied to the identity; the exposed
    symbols and the state select an entry of the table, whose prepending
    functions rebuild the halves around the remaining chains.
    """
    types = TMTypes.of(spec)
    u = exposed(types)
    result = types.halves()
    table, _ = lookup_node(spec, "c")
    selected = Ap(Inst(V("el"), entry(types)), Ap(Inst(V("s"), column(types)), Ap(
        Inst(V("eh"), row(types)), table)))
    rebuilt = tuple_node([
        (Ap(V("hl"), Lam("y", BB, V("tl"))), Lolli(BB, AL)),
        (V("s2"), types.state),
        (Ap(V("hr"), Lam("y", BB, V("th"))), Lolli(BB, AL)),
    ])
    choose = open_tuple(selected, [prepend(types), types.state, prepend(types)], ["hl", "s2", "hr"],
                        rebuilt, result)
    parts = [types.sigma, step_fn(types), AL]
    right = open_tuple(Ap(V("xr"), identity(BE, "i")), parts, ["eh", "fh", "th"], choose, result)
    left = open_tuple(Ap(V("xl"), identity(BE, "i")), parts, ["el", "fl", "tl"], right, result)
    halves = open_tuple(ap(V("z"), V("l"), V("r")), [Lolli(BB, u), types.state, Lolli(BB, u)],
                        ["xl", "s", "xr"], left, result)
    inner = Box(Lam("l", AL, Lam("r", AL, halves)))
    applied = Ap(Lam("z", Par(arrows([AL, AL], types.halves(u))), inner),
                 Ap(Inst(Inst(V("p"), AL), BE), Box(V("c"), "!")))
    node = Lam("p", pre_configuration(types), Gen(Gen(Lam("c", Bang(types.cons()), applied), "be"), "al"))
    return Piece(f"P2C[{spec.name}]", node, Lolli(pre_configuration(types), types.configuration))


def step(spec: TMSpec) -> Piece:
    """``delta = \\n. P2C (C2P n)`` : C -o C"""
    types = TMTypes.of(spec)
    node = Lam("n", types.configuration, Ap(p2c(spec).node, Ap(c2p(types).node, V("n"))))
    logger.debug(f"step of {spec.name}: {types.width} symbols with borders, {types.states} states")
    return Piece(f"delta[{spec.name}]", node, Lolli(types.configuration, types.configuration))


def build_lookup(spec: TMSpec) -> Tuple[Term, List[str]]:
    """The table with a fresh linear constructor per entry, and their names"""
    node, names = lookup_node(spec, None)
    return erase(node), names


def build_delta_bar(spec: TMSpec) -> Tuple[Term, Derivation]:
    piece = step(spec)
    return piece.term, piece.derivation
