"""
Configurations and the combinators the iterator moves them with.

A configuration ``<<r, l_0, .., l_{n+s}>>`` carries a word and 1+n+s lists
of words of one length: the head list, n normal lists and s safe ones. A
pre-configuration pairs every list with its popped head. ``C2PC`` pops,
``PC2C`` pushes the partial result back, and ``C2C`` is their composition.

Binders follow one scheme throughout: ``a<i>`` for the type of list i,
``d`` for the delayed tail, ``c`` for the answer, ``d<i>`` for the step of
list i and ``w<i>`` for its tail.
"""

from typing import Callable, Dict, List, Optional, Sequence

from walt_workbench.combinators.embeddings import diagonal
from walt_workbench.combinators.encoders import (
    boxes, encode_word, identity, instantiate, open_tuple, passed, word_node,
)
from walt_workbench.combinators.piece import Piece, require
from walt_workbench.combinators.schemas import (
    WORD, config_levels, config_steps, configuration, fields_to, final_configuration,
    list_of, pair, pair_fields, preconfiguration, tensor,
)
from walt_workbench.combinators.words import (
    successor_on_strings, string_to_list, word_identity, word_to_string,
)
from walt_workbench.core.errors import ArityMismatch, HypothesisViolated, RaggedLists
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import (
    EagerLolli, Forall, Formula, Lolli, Par, TyVar, arrows, par_n,
)
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap, lam
from walt_workbench.syntax.terms import Term, apps, lams, var

logger = get_logger("configurations", "combinators")

DELTA = TyVar("d")
ANSWER = TyVar("c")
WW = Lolli(WORD, WORD)


def alphas(k: int) -> List[TyVar]:
    return [TyVar(f"a{i}") for i in range(k)]


def step_names(k: int) -> List[str]:
    return [f"d{i}" for i in range(k)]


def tail_names(k: int) -> List[str]:
    return [f"w{i}" for i in range(k)]


def _gens(names: Sequence[str], body: Node) -> Node:
    for name in reversed(list(names)):
        body = Gen(body, name)
    return body


def _reader(alphas_: Sequence[Formula], m: int, answer: Formula) -> Formula:
    """``$^m W =o a_0 -o .. -o answer``"""
    return EagerLolli(par_n(m, WORD), arrows(alphas_, answer))


def check_lists(lists: Sequence[Sequence[int]], n: int, s: int) -> int:
    """The common length of the 1+n+s lists"""
    if len(lists) != 1 + n + s:
        raise ArityMismatch(f"a configuration with n={n}, s={s} has {1 + n + s} lists, got {len(lists)}")
    lengths = {len(items) for items in lists}
    if len(lengths) > 1:
        raise RaggedLists(f"lists of different lengths {sorted(lengths)}")
    return lengths.pop()


def _list_node(step: Node, items: Sequence[int], level: int, tail: Node) -> Node:
    """``step $^l[BNum a1] (.. (step $^l[BNum ar] tail))``"""
    body = tail
    for v in reversed(list(items)):
        body = ap(step, boxes(word_node(v), level), body)
    return body


# ---------- realizers ----------

def make_configuration(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int,
                       final: bool = False) -> Piece:
    """The canonical realizer of ``C[1+n; s; m]`` (``FC`` when ``final``)::

        /\\a. \\d0 .. . $[\\w0 .. . /\\c. \\x. x $^m[BNum r] (d0 BNum a1 (.. w0)) ..]
    """
    check_lists(lists, n, s)
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, steps, tails = alphas(k), step_names(k), tail_names(k)
    body = ap(V("x"), boxes(word_node(r), m),
              *(_list_node(V(d), items, level, V(w))
                for d, w, items, level in zip(steps, tails, lists, levels)))
    inner: Node = Lam("x", _reader(avs, m, ANSWER), body)
    if not final:
        inner = Gen(inner, ANSWER.name)
    inner = lam(list(zip(tails, avs)), inner)
    node = lam(list(zip(steps, config_steps(avs, levels))), Box(inner))
    names = [a.name for a in avs] + ([ANSWER.name] if final else [])
    ty = final_configuration(n, s, m) if final else configuration(n, s, m)
    shown = "; ".join("[" + ", ".join(map(str, items)) + "]" for items in lists)
    return Piece(f"<<{r}; {shown}>>", _gens(names, node), ty)


def make_final_configuration(r: int, lists: Sequence[Sequence[int]], n: int, s: int,
                             m: int) -> Piece:
    return make_configuration(r, lists, n, s, m, final=True)


def cell_name(i: int, j: int) -> str:
    """The step variable in front of element j (from 1) of list i in a pre-configuration"""
    return f"c{i}_{j}"


def _fn_field(function: Node, level: int) -> Node:
    """``$^l[\\v. F v]``"""
    return boxes(Lam("v", WORD, Ap(function, V("v"))), level)


def make_preconfiguration(r: int, lists: Sequence[Sequence[int]], n: int, s: int, m: int,
                          functions: Optional[Sequence[Piece]] = None) -> Piece:
    """The canonical realizer of ``SC[a_0 .. , d; m]``, open in its step and tail variables::

        /\\c. \\x. x $^m[BNum r] <c0_1, $[\\v. F0 v], BNum a1, \\f. c0_2 BNum a2 (.. w0)> ..

    ``functions`` gives the closed value ``F_i : W -o W`` of every pair, the
    identity by default.
    """
    length = check_lists(lists, n, s)
    if length == 0:
        raise HypothesisViolated("every list of a pre-configuration has a head")
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, tails = alphas(k), tail_names(k)
    functions = list(functions) if functions is not None else [word_identity()] * k
    if len(functions) != k:
        raise ArityMismatch(f"{k} pair functions expected, got {len(functions)}")
    free: Dict[str, Formula] = {}
    pairs = []
    for i, (items, level, alpha, w, f) in enumerate(zip(lists, levels, avs, tails, functions)):
        require(f, WW, f"pair function {i}")
        step_ty = EagerLolli(par_n(level, WORD), Lolli(alpha, alpha))
        free[w] = alpha
        rest: Node = V(w)
        for j in range(len(items), 1, -1):
            free[cell_name(i, j)] = step_ty
            rest = ap(V(cell_name(i, j)), boxes(word_node(items[j - 1]), level), rest)
        free[cell_name(i, 1)] = step_ty
        body = ap(V("t"), V(cell_name(i, 1)), _fn_field(f.node, level),
                  boxes(word_node(items[0]), level), Lam("f", Lolli(DELTA, DELTA), rest))
        fields = fields_to(pair_fields(alpha, DELTA, level), TyVar("b"))
        pairs.append(Gen(Lam("t", fields, body), "b"))
    pair_types = [pair(a, DELTA, level) for a, level in zip(avs, levels)]
    node = Gen(Lam("x", _reader(pair_types, m, ANSWER), ap(V("x"), boxes(word_node(r), m), *pairs)),
               ANSWER.name)
    return Piece(f"<<{r}; pairs>>", node, preconfiguration(avs, DELTA, levels, m), free=free)


def preconfiguration_term(r: int, lists: Sequence[Sequence[int]], functions: Sequence[Term],
                          step: Callable[[int, int], str], tails: Sequence[str]) -> Term:
    """The erasure of a pre-configuration with ``step(i, j)`` in front of element j of list i"""
    pairs = []
    for i, items in enumerate(lists):
        rest: Term = var(tails[i])
        for j in range(len(items), 1, -1):
            rest = apps(var(step(i, j)), encode_word(items[j - 1]), rest)
        pairs.append(lams("t", apps(var("t"), var(step(i, 1)), functions[i],
                                    encode_word(items[0]), lams("f", rest))))
    return lams("x", apps(var("x"), encode_word(r), *pairs))


def configuration_term(r: int, lists: Sequence[Sequence[int]], step: Callable[[int, int], str],
                       tails: Sequence[str]) -> Term:
    """``\\x. x BNum r (d0 BNum a1 (.. w0)) ..``, with ``step(i, j)`` in front of element j (from 1) of list i"""
    bodies = []
    for i, items in enumerate(lists):
        rest: Term = var(tails[i])
        for j in range(len(items), 0, -1):
            rest = apps(var(step(i, j)), encode_word(items[j - 1]), rest)
        bodies.append(rest)
    return lams("x", apps(var("x"), encode_word(r), *bodies))


# ---------- heads and tails ----------

def base_pair(m: int, alpha: Formula = TyVar("a"), delta: Formula = DELTA) -> Piece:
    """``Ba^m = \\y x. x (\\x y. y) [I]^m BNum0 (\\f. y)`` : a -o T[a, d; $^m W]"""
    element = par_n(m, WORD)
    drop = lam([("u", element, True), ("z", alpha)], V("z"))
    body = ap(V("x"), drop, _fn_field(identity(WORD), m), boxes(word_node(0), m),
              Lam("f", Lolli(delta, delta), V("y")))
    fields = fields_to(pair_fields(alpha, delta, m), TyVar("b"))
    node = Lam("y", alpha, Gen(Lam("x", fields, body), "b"))
    return Piece(f"Ba^{m}", node, Lolli(alpha, pair(alpha, delta, m)))


def step_pair(m: int, g: Piece, alpha: Formula = TyVar("a"), delta: Formula = DELTA) -> Piece:
    """``St^m[G] = \\c a t x. x c [G]^m a (\\f. t (\\c g a l. c (g a) (l I)))``

    Pushes ``a`` in front of the pair ``t``, applying G to the head ``t`` held.
    """
    require(g, WW, "G")
    element = par_n(m, WORD)
    c_ty = EagerLolli(element, Lolli(alpha, alpha))
    t_ty = pair(alpha, delta, m)
    shift = lam([("c2", c_ty), ("g2", par_n(m, WW), True), ("a2", element, True),
                 ("l", Lolli(Lolli(delta, delta), alpha))],
                ap(V("c2"), boxes(Ap(V("g2"), V("a2")), m), Ap(V("l"), identity(delta, "i"))))
    tail = Lam("f", Lolli(delta, delta), Ap(Inst(V("t"), alpha), shift))
    body = ap(V("x"), V("c"), _fn_field(g.node, m), boxes(V("a"), m), tail)
    fields = fields_to(pair_fields(alpha, delta, m), TyVar("b"))
    node = lam([("c", c_ty), ("a", element, True), ("t", t_ty)], Gen(Lam("x", fields, body), "b"))
    return Piece(f"St^{m}[{g.name}]", node, Lolli(c_ty, EagerLolli(element, Lolli(t_ty, t_ty))))


# ---------- transition function ----------

def config_to_preconfig(n: int, s: int, m: int, g: Piece) -> Piece:
    """``C2PC[G] = \\x d0 .. . (\\b. \\w0 .. . b (Ba w0) ..) (x (St[G] d0) (St[I] d1) ..)``

    The head list is popped through G; the others through I.
    """
    require(g, WW, "G")
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, steps, tails = alphas(k), step_names(k), tail_names(k)
    pair_types = [pair(a, DELTA, level) for a, level in zip(avs, levels)]
    sc = preconfiguration(avs, DELTA, levels, m)
    fn = Lam("b", Par(arrows(pair_types, sc)),
             Box(lam(list(zip(tails, avs)),
                     ap(V("b"), *(Ap(base_pair(level, a).node, V(w))
                                  for w, a, level in zip(tails, avs, levels))))))
    pushers = [Box(Ap(step_pair(level, g if i == 0 else word_identity(), a).node, V(d)), "!")
               for i, (d, a, level) in enumerate(zip(steps, avs, levels))]
    arg = ap(instantiate(V("x"), *pair_types), *pushers)
    c = configuration(n, s, m)
    node = lam([("x", c)] + list(zip(steps, config_steps(avs, levels))), Ap(fn, arg))
    ty = Lolli(c, arrows(config_steps(avs, levels), Par(arrows(avs, sc))))
    return Piece(f"C2PC[{g.name}]", node, ty)


def transition_function_type(n: int, s: int, m: int) -> Formula:
    """``$W =o ($W)^n =o ($^m W)^s =o $^m W =o $^m W``, what F' and the iterator's G have"""
    args = [Par(WORD)] * (1 + n) + [par_n(m, WORD)] * s + [par_n(m, WORD)]
    return arrows(args, par_n(m, WORD), eager=True)


def preconfig_to_config(n: int, s: int, m: int, fp: Piece) -> Piece:
    """``PC2C[F'] = \\x. x (\\r t0 .. . t_{n+s} (.. (t0 H)))`` where H reads every pair::

        H = \\d0 f0 n0 l0 .. . \\x. x (F' n0 .. r) (l0 I) ..
    """
    require(fp, transition_function_type(n, s, m), "F'")
    levels = config_levels(n, s, m)
    k = len(levels)
    avs = alphas(k)
    result = Lolli(_reader(avs, m, ANSWER), ANSWER)
    fields = [pair_fields(a, DELTA, level) for a, level in zip(avs, levels)]

    def after(i: int) -> Formula:
        out = result
        for j in reversed(range(i + 1, k)):
            out = fields_to(fields[j], out)
        return out

    binders = []
    for i, level in enumerate(levels):
        names = (f"d{i}", f"f{i}", f"h{i}", f"l{i}")
        binders.extend((x, ty, eager) for x, (ty, eager) in zip(names, fields[i]))
    update = ap(fp.node, *(passed(f"h{i}", par_n(level, WORD)) for i, level in enumerate(levels)),
                boxes(V("r"), m))
    reader = Lam("x", _reader(avs, m, ANSWER),
                 ap(V("x"), update, *(Ap(V(f"l{i}"), identity(DELTA, "i")) for i in range(k))))
    acc: Node = lam(binders, reader)
    for i in range(k):
        acc = Ap(Inst(V(f"t{i}"), after(i)), acc)
    pair_types = [pair(a, DELTA, level) for a, level in zip(avs, levels)]
    opener = lam([("r", par_n(m, WORD), True)] + [(f"t{i}", t) for i, t in enumerate(pair_types)], acc)
    sc = preconfiguration(avs, DELTA, levels, m)
    node = Lam("p", sc, Ap(Inst(V("p"), result), opener))
    return Piece(f"PC2C[{fp.name}]", node, Lolli(sc, result), fp.semantics)


def config_to_config(n: int, s: int, m: int, f: Piece, fp: Piece) -> Piece:
    """``C2C[F, F'] = \\x d0 .. . (\\b. \\w0 .. . PC2C[F'] (b w0 ..)) (C2PC[F] x d0 ..)``"""
    popper = config_to_preconfig(n, s, m, f)
    pusher = preconfig_to_config(n, s, m, fp)
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, steps, tails = alphas(k), step_names(k), tail_names(k)
    sc = preconfiguration(avs, DELTA, levels, m)
    fn = Lam("b", Par(arrows(avs, sc)),
             Box(lam(list(zip(tails, avs)),
                     Gen(Ap(pusher.node, ap(V("b"), *(V(w) for w in tails))), ANSWER.name))))
    body = Ap(fn, ap(popper.node, V("x"), *(Box(V(d), "!") for d in steps)))
    c = configuration(n, s, m)
    node = Lam("x", c, _gens([a.name for a in avs],
                             lam(list(zip(steps, config_steps(avs, levels))), body)))
    logger.debug(f"C2C[{f.name}, {fp.name}] for n={n} s={s} m={m}")
    return Piece(f"C2C[{f.name}, {fp.name}]", node, Lolli(c, c))


# ---------- in and out of configurations ----------

def lists_to_config(n: int, s: int, m: int) -> Piece:
    """``L2C = \\l0 .. . \\d0 .. . (\\b0 .. . \\w0 .. x. x BNum0 (b0 w0) ..) (l0 d0) ..``"""
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, steps, tails = alphas(k), step_names(k), tail_names(k)
    list_types = [list_of(par_n(level, WORD)) for level in levels]
    reader = Lam("x", _reader(avs, m, ANSWER),
                 ap(V("x"), boxes(word_node(0), m),
                    *(Ap(V(f"b{i}"), V(w)) for i, w in enumerate(tails))))
    fn = lam([(f"b{i}", Par(Lolli(a, a))) for i, a in enumerate(avs)],
             Box(lam(list(zip(tails, avs)), Gen(reader, ANSWER.name))))
    body = ap(fn, *(ap(Inst(V(f"l{i}"), a), Box(V(d), "!"))
                    for i, (a, d) in enumerate(zip(avs, steps))))
    node = lam([(f"l{i}", t) for i, t in enumerate(list_types)],
               _gens([a.name for a in avs], lam(list(zip(steps, config_steps(avs, levels))), body)))
    return Piece("L2C", node, arrows(list_types, configuration(n, s, m)))


def word_to_config(n: int, s: int, m: int) -> Piece:
    """``W2C = \\n1 .. s1 .. w. (\\t. t (\\k0 .. . L2C (S2L BNum0 (Ss (W2S k0))) (S2L n1 (..)) ..)) (DiagN w)``

    Every list is as long as w has digits, plus one.
    """
    levels = config_levels(n, s, m)
    k = len(levels)
    ks = [f"k{i}" for i in range(k)]
    normals = [f"n{i}" for i in range(1, n + 1)]
    safes = [f"s{j}" for j in range(1, s + 1)]
    seeds: List[Node] = [boxes(word_node(0), 2)]
    seeds += [boxes(V(x), 2) for x in normals]
    seeds += [boxes(V(x), m + 1) for x in safes]
    ss, w2s = successor_on_strings(), word_to_string()
    lists = [ap(string_to_list(par_n(level, WORD)).node, seed, Ap(ss.node, Ap(w2s.node, V(x))))
             for seed, level, x in zip(seeds, levels, ks)]
    c = configuration(n, s, m)
    build = open_tuple(V("t"), [WORD] * k, ks, ap(lists_to_config(n, s, m).node, *lists), c)
    fn = Lam("t", Par(tensor([WORD] * k)), Box(build))
    binders = ([(x, par_n(3, WORD), True) for x in normals]
               + [(x, par_n(m + 2, WORD), True) for x in safes] + [("w", WORD)])
    node = lam(binders, Ap(fn, Ap(diagonal(k).node, V("w"))))
    ty = arrows([par_n(3, WORD)] * n + [par_n(m + 2, WORD)] * s, Lolli(WORD, Par(c)), eager=True)
    return Piece("W2C", node, ty)


def config_to_final(n: int, s: int, m: int) -> Piece:
    """``C2FC = \\x. \\d0 .. . (\\b w0 .. . b w0 ..) (x d0 ..)``: moves the answer quantifier out"""
    levels = config_levels(n, s, m)
    k = len(levels)
    avs, steps, tails = alphas(k), step_names(k), tail_names(k)
    answer = Forall(ANSWER.name, Lolli(_reader(avs, m, ANSWER), ANSWER))
    fn = Lam("b", Par(arrows(avs, answer)),
             Box(lam(list(zip(tails, avs)), Inst(ap(V("b"), *(V(w) for w in tails)), ANSWER))))
    body = Ap(fn, ap(instantiate(V("x"), *avs), *(Box(V(d), "!") for d in steps)))
    node = Lam("x", configuration(n, s, m),
               _gens([a.name for a in avs] + [ANSWER.name],
                     lam(list(zip(steps, config_steps(avs, levels))), body)))
    return Piece("C2FC", node, Lolli(configuration(n, s, m), final_configuration(n, s, m)))


def final_to_word(n: int, s: int, m: int) -> Piece:
    """``FC2W = \\x. (\\b. b BNum0 .. (\\r x0 .. u. r) I) (x (\\x y. y) ..)`` : FC -o $^{m+1} W

    The answer is read at ``(p -o p) -o $^m W`` because configurations only
    answer at linear formulae.
    """
    levels = config_levels(n, s, m)
    k = len(levels)
    p = TyVar("p")
    answer = Lolli(Lolli(p, p), par_n(m, WORD))
    words_ = [WORD] * k
    drops = [Box(lam([("u", par_n(level, WORD), True), ("y", WORD)], V("y")), "!") for level in levels]
    reader = lam([("r", par_n(m, WORD), True)] + [(f"x{i}", WORD) for i in range(k)]
                 + [("u", Lolli(p, p))], boxes(V("r"), m))
    fn = Lam("b", Par(arrows(words_, Lolli(_reader(words_, m, answer), answer))),
             Box(ap(V("b"), *(word_node(0) for _ in range(k)), reader, identity(p, "v"))))
    fc = final_configuration(n, s, m)
    node = Lam("x", fc, Ap(fn, ap(instantiate(V("x"), *words_, answer), *drops)))
    return Piece("FC2W", node, Lolli(fc, par_n(m + 1, WORD)))
