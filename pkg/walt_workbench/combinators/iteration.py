"""
The iterator and the composition.

``It[G0, G1, G2]`` walks the digits of its first argument from the most
significant one, starting from ``G2`` on 0 and applying ``G_nu`` for every
digit nu. ``Comp[F, G.., H..]`` feeds F with the results of normal and safe
functions sharing their normal arguments.
"""

from typing import List, Sequence

from walt_workbench.combinators.configurations import (
    config_to_config, config_to_final, final_to_word, transition_function_type, word_to_config,
)
from walt_workbench.combinators.embeddings import (
    coerce_power, diagonal, elementary_diagonal, lift,
)
from walt_workbench.combinators.encoders import boxes, open_tuple, untuple_node
from walt_workbench.combinators.piece import Piece, require
from walt_workbench.combinators.schemas import WORD, configuration, etensor, tensor
from walt_workbench.combinators.words import word_identity, ws0, ws1
from walt_workbench.core.errors import ArityMismatch
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import EagerLolli, Formula, Lolli, Par, arrows, par_n
from walt_workbench.judgments.annotated import Ap, Box, Inst, Lam, Node, V, ap, lam

logger = get_logger("iteration", "combinators")


def iterate_semantics(g0, g1, g2, n: int):
    """What ``It[G0, G1, G2]`` computes, given what the G's compute"""
    if None in (g0, g1, g2):
        return None

    def run(x: int, *args: int) -> int:
        normals, safes = args[:n], args[n:]
        r = g2(0, *normals, *safes, 0)
        for i in reversed(range(x.bit_length())):
            step = g1 if (x >> i) & 1 else g0
            r = step(x >> (i + 1), *normals, *safes, r)
        return r

    return run


def iterator(n: int, s: int, m: int, g0: Piece, g1: Piece, g2: Piece) -> Piece:
    """``It[G0, G1, G2] = \\n n1 .. . E^1[H] ([DiagN 2]^1 n) ([Coerce^4]^1 n1) ..`` where::

        H = \\t n1 .. s1 .. . t (\\a b. (\\z y. FC2W (C2FC (z (C2C[I, G2] y))))
                                  (a C2C[Ws0, G0] C2C[Ws1, G1]) (W2C n1 .. s1 .. b))

    It : $W =o ($W)^n =o ($^{m+4} W)^s =o $^{m+4} W
    """
    if m < 1:
        raise ValueError(f"the iterator needs m >= 1, got {m}")
    for i, g in enumerate((g0, g1, g2)):
        require(g, transition_function_type(n, s, m), f"G{i}")
    c = configuration(n, s, m)
    normals = [f"n{i}" for i in range(1, n + 1)]
    safes = [f"s{j}" for j in range(1, s + 1)]
    run = Lam("z", Par(Lolli(c, c)),
              Lam("y", Par(c), Box(Ap(final_to_word(n, s, m).node,
                                      Ap(config_to_final(n, s, m).node,
                                         Ap(V("z"), Ap(config_to_config(n, s, m, word_identity(), g2).node,
                                                       V("y"))))))))
    steps = ap(Inst(V("a"), c), Box(config_to_config(n, s, m, ws0(), g0).node, "!"),
               Box(config_to_config(n, s, m, ws1(), g1).node, "!"))
    start = ap(word_to_config(n, s, m).node, *(boxes(V(x), 3) for x in normals),
               *(boxes(V(x), m + 2) for x in safes), V("b"))
    body = open_tuple(V("t"), [WORD, WORD], ["a", "b"], ap(run, steps, start), par_n(m + 2, WORD))
    h_args: List[Formula] = ([Par(tensor([WORD, WORD]))] + [par_n(4, WORD)] * n
                             + [par_n(m + 3, WORD)] * s)
    h_node = lam([("t", h_args[0], True)] + [(x, par_n(4, WORD), True) for x in normals]
                 + [(x, par_n(m + 3, WORD), True) for x in safes], Box(body))
    h = Piece("H", h_node, arrows(h_args, par_n(m + 3, WORD), eager=True))
    lifted = lift(h, 1, 1 + n + s)
    copies = lift(diagonal(2), 1, 1)
    coerced = lift(coerce_power(4), 1, 1)
    node = lam([("n", Par(WORD), True)] + [(x, Par(WORD), True) for x in normals],
               ap(lifted.node, Ap(copies.node, Box(V("n"))),
                  *(Ap(coerced.node, Box(V(x))) for x in normals)))
    ty = arrows([Par(WORD)] * (1 + n) + [par_n(m + 4, WORD)] * s, par_n(m + 4, WORD), eager=True)
    logger.debug(f"It[{g0.name}, {g1.name}, {g2.name}] for n={n} s={s} m={m}")
    return Piece(f"It[{g0.name}, {g1.name}, {g2.name}]", node, ty,
                 iterate_semantics(g0.semantics, g1.semantics, g2.semantics, n))


def safe_arity(h: Piece, n: int, m: int) -> int:
    """The number of safe arguments of ``h : ($W)^n =o ($^m W)^s =o $^m W``"""
    ty, count = h.ty, 0
    while isinstance(ty, (Lolli, EagerLolli)):
        ty, count = ty.right, count + 1
    if count < n:
        raise ArityMismatch(f"{h.name} takes fewer than {n} normal arguments")
    s = count - n
    require(h, arrows([Par(WORD)] * n + [par_n(m, WORD)] * s, par_n(m, WORD), eager=True), "H")
    return s


def compose_semantics(f: Piece, gs: Sequence[Piece], hs: Sequence[Piece], n: int,
                      arities: Sequence[int]):
    if f.semantics is None or any(p.semantics is None for p in [*gs, *hs]):
        return None

    def run(*args: int) -> int:
        normals, rest = args[:n], list(args[n:])
        inner = [g.semantics(*normals) for g in gs]
        for h, k in zip(hs, arities):
            inner.append(h.semantics(*normals, *rest[:k]))
            rest = rest[k:]
        return f.semantics(*inner)

    return run


def composition(n: int, m: int, f: Piece, gs: Sequence[Piece], hs: Sequence[Piece]) -> Piece:
    """``Comp[F, G1 .., H1 ..] = \\n1 .. . E^2[G] ([DiagMN 1 (n'+s')]^1 n1) ..`` where::

        G = \\<<x11 .. y11 ..>> .. \\w11 .. . E^{m-1}[F] (G1 x11 ..) ..
                (E^{m-1}[H1] ([Coerce^{m-1}]^1 y11) .. w11 ..) ..

    Comp : ($W)^n =o ($^{2m+1} W)^{s1 + ..} =o $^{2m+1} W
    """
    if m < 1:
        raise ValueError(f"the composition needs m >= 1, got {m}")
    n1, s1 = len(gs), len(hs)
    require(f, arrows([Par(WORD)] * n1 + [par_n(m, WORD)] * s1, par_n(m, WORD), eager=True), "F")
    for j, g in enumerate(gs):
        require(g, arrows([Par(WORD)] * n, par_n(m, WORD), eager=True), f"G{j + 1}")
    arities = [safe_arity(h, n, m) for h in hs]
    k = n1 + s1
    deep = par_n(2 * m - 1, WORD)
    xs = [[f"x{j}_{i}" for i in range(n)] for j in range(n1)]
    ys = [[f"y{j}_{i}" for i in range(n)] for j in range(s1)]
    ws = [[f"w{j}_{q}" for q in range(arity)] for j, arity in enumerate(arities)]
    coerced = lift(coerce_power(m - 1), 1, 1)
    normal_calls = [ap(g.node, *(Box(V(x)) for x in xs[j])) for j, g in enumerate(gs)]
    safe_calls = [ap(lift(h, m - 1, n + arities[j]).node,
                     *(Ap(coerced.node, Box(V(y))) for y in ys[j]),
                     *(boxes(V(w), 2 * m - 1) for w in ws[j]))
                  for j, h in enumerate(hs)]
    body: Node = ap(lift(f, m - 1, k).node, *normal_calls, *safe_calls)
    safe_names = [w for row in ws for w in row]
    body = lam([(w, deep, True) for w in safe_names], body)
    current = arrows([deep] * len(safe_names), deep, eager=True)
    t = etensor([Par(WORD)] * k)
    for i in reversed(range(n)):
        names = [xs[j][i] for j in range(n1)] + [ys[j][i] for j in range(s1)]
        body = untuple_node([Par(WORD)] * k, names, body, current, elementary=True)
        current = Lolli(t, current)
    inner = Piece("G", body, current)
    lifted = lift(inner, 2, n + len(safe_names))
    copies = lift(elementary_diagonal(1, k), 1, 1)
    normals = [f"n{i}" for i in range(1, n + 1)]
    node = lam([(x, Par(WORD), True) for x in normals],
               ap(lifted.node, *(Ap(copies.node, Box(V(x))) for x in normals)))
    ty = arrows([Par(WORD)] * n + [par_n(2 * m + 1, WORD)] * len(safe_names),
                par_n(2 * m + 1, WORD), eager=True)
    name = f"Comp[{', '.join(p.name for p in [f, *gs, *hs])}]"
    return Piece(name, node, ty, compose_semantics(f, gs, hs, n, arities))
