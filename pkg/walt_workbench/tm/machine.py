"""
The encoded machine ``M = \\x. let <n, l> = Dup x in run (NPoly n) (Coerce^{4e} l)``
: L_Sigma -o $^{4e+1} C.

``Dup`` measures the input list and copies it; the clock ``NPoly`` turns the
length n into K n^(2^e); the input is coerced to the depth of the clock,
turned into the initial configuration and the step is iterated as many
times as the clock says.
"""

from functools import lru_cache
from typing import Optional, Sequence, Tuple

from walt_workbench.combinators.embeddings import embed_linear
from walt_workbench.combinators.encoders import (
    boxes, identity, open_tuple, string_node, tuple_node,
)
from walt_workbench.combinators.piece import Piece
from walt_workbench.combinators.schemas import NAT, tensor
from walt_workbench.combinators.words import successor_on_strings
from walt_workbench.core.errors import OracleMismatch
from walt_workbench.core.logging_config import fields, get_logger
from walt_workbench.core.models import Trace
from walt_workbench.formulas.types import Bang, Formula, Lolli, Par, TyVar, arrows, par_n
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.reduction.engine import reduce_to_nf
from walt_workbench.syntax.terms import App, Term
from walt_workbench.tm.clock import npoly_normal
from walt_workbench.tm.simulate import TMConfig, tm_simulate
from walt_workbench.tm.spec import TMSpec
from walt_workbench.tm.tapes import (
    AL, BB, BE, BOTTOM, DecodedConfig, TMTypes, configuration_piece, decode_config, encode_input,
    half, state_node, symbol_node, tape_piece,
)
from walt_workbench.tm.transition import step

logger = get_logger("machine", "tm")

W = TyVar("w")
P = TyVar("p")


def _iterate(l: Node, al: Formula, be: Formula, step_node: Node, z_type: Formula, body: Node) -> Node:
    """``(\\z. body) (l @[al] @[be] step)``"""
    return Ap(Lam("z", z_type, body), Ap(Inst(Inst(l, al), be), step_node))


def _list_cons(types: TMTypes, al: Formula, be: Formula) -> Formula:
    return arrows([types.sigma, Lolli(be, al)], al)


def _list_answer(al: Formula, be: Formula) -> Formula:
    return Par(arrows([al, be], al))


# ---------- symbols and lists ----------

def alphabet_coerce(types: TMTypes) -> Piece:
    """``\\x. x <\\u. $[s_0], .., \\u. $[s_k]> I`` : Sigma -o $Sigma"""
    answer = Lolli(Lolli(P, P), Par(types.sigma))
    items = [(Lam("u", Lolli(P, P), Box(symbol_node(types, i))), answer) for i in range(types.width)]
    node = Lam("x", types.sigma, ap(Inst(V("x"), answer), tuple_node(items), identity(P, "v")))
    return Piece("AlphCoerce", node, Lolli(types.sigma, Par(types.sigma)))


def nil(types: TMTypes) -> Piece:
    return tape_piece(types, [])


def push(types: TMTypes) -> Piece:
    """``Push = \\e l. (\\d c. (\\z. $[\\x y. c d (\\y. z x y)]) (l ![c])) (AlphCoerce e)`` : Sigma -o L -o L"""
    inner = Box(Lam("x", AL, Lam("y", BE, ap(V("c"), V("d"), Lam("y2", BE, ap(V("z"), V("x"), V("y2")))))))
    body = _iterate(V("l"), AL, BE, Box(V("c"), "!"), _list_answer(AL, BE), inner)
    pushed = Lam("d", Par(types.sigma), Gen(Gen(Lam("c", Bang(_list_cons(types, AL, BE)), body), "be"), "al"))
    node = Lam("e", types.sigma, Lam("l", types.tape_list, Ap(pushed, Ap(alphabet_coerce(types).node, V("e")))))
    return Piece("Push", node, arrows([types.sigma, types.tape_list], types.tape_list))


def list_coerce(types: TMTypes) -> Piece:
    """``\\l. (\\z. $[z nil I]) (l @[L] @[w -o w] !(\\e t. Push e (t I)))`` : L -o $L"""
    tape = types.tape_list
    be = Lolli(W, W)
    succ = Lam("e", types.sigma, Lam("t", Lolli(be, tape), ap(
        push(types).node, V("e"), Ap(V("t"), identity(W, "v")))))
    body = _iterate(V("l"), tape, be, Box(succ, "!"), _list_answer(tape, be),
                    Box(ap(V("z"), nil(types).node, identity(W, "v"))))
    return Piece("ListCoerce", Lam("l", tape, body), Lolli(tape, Par(tape)))


@lru_cache(maxsize=None)
def list_coerce_power(types: TMTypes, m: int) -> Piece:
    """``ListCoerce^m`` : L -o $^m L"""
    tape = types.tape_list
    if m < 0:
        raise ValueError(f"negative coercion exponent {m}")
    if m == 0:
        return Piece("ListCoerce^0", identity(tape), Lolli(tape, tape))
    below = embed_linear(list_coerce_power(types, m - 1), 1, 1)
    node = Lam("x", tape, Ap(below.node, Ap(list_coerce(types).node, V("x"))))
    return Piece(f"ListCoerce^{m}", node, Lolli(tape, par_n(m, tape)))


def measured(types: TMTypes) -> Formula:
    """N (x) L"""
    return tensor([NAT, types.tape_list])


def dup(types: TMTypes) -> Piece:
    """``Dup = \\l. (\\z. $[z <U0, nil> I]) (l !(\\e t. let <n, k> = t I in <Ss n, Push e k>))`` : L -o $(N (x) L)"""
    tape, pair = types.tape_list, measured(types)
    be = Lolli(W, W)
    grown = tuple_node([(Ap(successor_on_strings().node, V("n")), NAT),
                        (ap(push(types).node, V("e"), V("k")), tape)])
    succ = Lam("e", types.sigma, Lam("t", Lolli(be, pair), open_tuple(
        Ap(V("t"), identity(W, "v")), [NAT, tape], ["n", "k"], grown, pair)))
    empty = tuple_node([(string_node(0), NAT), (nil(types).node, tape)])
    body = _iterate(V("l"), pair, be, Box(succ, "!"), _list_answer(pair, be),
                    Box(ap(V("z"), empty, identity(W, "v"))))
    return Piece("Dup", Lam("l", tape, body), Lolli(tape, Par(pair)))


def list_to_string(types: TMTypes) -> Piece:
    """``L2N = \\l f. (\\z. $[\\x. z x I]) (l !(\\e t. f (t I)))`` : L -o N, the length"""
    a = TyVar("a")
    arrow = Lolli(a, a)
    succ = Lam("e", types.sigma, Lam("t", Lolli(arrow, a), Ap(V("f"), Ap(V("t"), identity(a)))))
    body = _iterate(V("l"), a, arrow, Box(succ, "!"), _list_answer(a, arrow),
                    Box(Lam("x", a, ap(V("z"), V("x"), identity(a)))))
    node = Lam("l", types.tape_list, Gen(Lam("f", Bang(arrow), body), "a"))
    return Piece("L2N", node, Lolli(types.tape_list, NAT), lambda n: n)


def list_to_config(spec: TMSpec) -> Piece:
    """``L2C = \\l c. (\\z. $[\\x r. <\\y. c bottom (\\y. x), s0, z (c top (\\y. r))>]) (l ![c])`` : L -o C"""
    types = TMTypes.of(spec)
    right = ap(V("z"), ap(V("c"), symbol_node(types, types.top), Lam("y", BB, V("r"))))
    body = tuple_node([
        (half(types, "c", [BOTTOM], "x"), Lolli(BB, AL)),
        (state_node(types, spec.state_index(spec.initial)), types.state),
        (right, Lolli(BB, AL)),
    ])
    inner = Box(Lam("x", AL, Lam("r", AL, body)))
    applied = _iterate(V("l"), AL, BB, Box(V("c"), "!"), _list_answer(AL, BB), inner)
    node = Lam("l", types.tape_list, Gen(Gen(Lam("c", Bang(types.cons()), applied), "be"), "al"))
    return Piece("L2C", node, Lolli(types.tape_list, types.configuration))


# ---------- the machine ----------

def _run(spec: TMSpec) -> Piece:
    """``\\i t. $^{4e-1}[(\\z. $[z (L2C t)]) (i ![delta])]`` : $^{4e-1}N -o $^{4e}L -o $^{4e}C"""
    types = TMTypes.of(spec)
    e = spec.exponent
    conf = types.configuration
    iterated = Ap(Lam("z", Par(Lolli(conf, conf)), Box(Ap(V("z"), Ap(list_to_config(spec).node, V("t"))))),
                  Ap(Inst(V("i"), conf), Box(step(spec).node, "!")))
    node = Lam("i", par_n(4 * e - 1, NAT), Lam("t", par_n(4 * e, types.tape_list), boxes(iterated, 4 * e - 1)))
    return Piece("run", node, arrows([par_n(4 * e - 1, NAT), par_n(4 * e, types.tape_list)], par_n(4 * e, conf)))


def machine_piece(spec: TMSpec) -> Piece:
    """The machine at ``L_Sigma -o $^{4e+1} C``"""
    types = TMTypes.of(spec)
    e = spec.exponent
    result = par_n(4 * e, types.configuration)
    call = ap(_run(spec).node, Ap(npoly_normal(e, spec.coefficient_bound).node, V("n")),
              Ap(list_coerce_power(types, 4 * e).node, V("k")))
    opened = open_tuple(V("d"), [NAT, types.tape_list], ["n", "k"], call, result)
    node = Lam("x", types.tape_list, Ap(Lam("d", Par(measured(types)), Box(opened)), Ap(dup(types).node, V("x"))))
    logger.info(f"encoded {spec.name}: clock {spec.coefficient_bound} n^{2 ** e}, answer at $^{4 * e + 1}")
    return Piece(f"M[{spec.name}]", node, Lolli(types.tape_list, par_n(4 * e + 1, types.configuration)))


def encode_machine(spec: TMSpec) -> Tuple[Term, Derivation]:
    piece = machine_piece(spec)
    return piece.term, piece.derivation


def read_config(spec: TMSpec, decoded: DecodedConfig) -> TMConfig:
    def name(i: int) -> str:
        return spec.alphabet[i - 1]
    return TMConfig(tuple(map(name, decoded.left)), spec.states[decoded.state],
                    tuple(map(name, decoded.right)))


def encode_config(spec: TMSpec, config: TMConfig) -> Piece:
    return configuration_piece(TMTypes.of(spec), [spec.symbol_index(a) for a in config.left],
                               spec.state_index(config.state), [spec.symbol_index(a) for a in config.right])


def tm_run(spec: TMSpec, symbols: Sequence[str], budget: Optional[int] = None,
           relation: str = "beta") -> Tuple[TMConfig, Trace]:
    """Normalize the machine on the input and read the configuration back"""
    term = App(machine_piece(spec).term, encode_input(spec, symbols).term)
    result, trace = reduce_to_nf(term, budget=budget, relation=relation)
    config = read_config(spec, decode_config(result))
    logger.info(f"{spec.name} on {' '.join(symbols) or '(empty)'}",
                extra=fields(machine=spec.name, steps=trace.step_count, state=config.state))
    return config, trace


def tm_step(spec: TMSpec, config: TMConfig, budget: Optional[int] = None) -> TMConfig:
    """One application of the encoded step"""
    term = App(step(spec).term, encode_config(spec, config).term)
    result, _ = reduce_to_nf(term, budget=budget, relation="beta")
    return read_config(spec, decode_config(result))


def verify_run(spec: TMSpec, symbols: Sequence[str], budget: Optional[int] = None) -> TMConfig:
    """``tm_run`` checked against the simulator after as many steps as the clock gives"""
    config, _ = tm_run(spec, symbols, budget)
    expected = tm_simulate(spec, symbols).config
    if config != expected:
        raise OracleMismatch(f"{spec.name} on {list(symbols)}: the encoding reaches {config}, "
                             f"the simulator {expected}")
    return config
