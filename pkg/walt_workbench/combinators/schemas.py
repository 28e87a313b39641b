"""
Formulae of the encodings.

Strings N, words W, tensors, elementary tensors, booleans, lists, and the
configuration types the iterator moves through. Schematic formulae take the
names of their free type variables as arguments.
"""

from typing import List, Sequence, Tuple

from walt_workbench.formulas.types import (
    Bang, EagerLolli, Forall, Formula, Lolli, Par, TyVar, arrows, foralls, fresh_tyvar, par_n,
)


def _arrow(a: Formula) -> Formula:
    return Lolli(a, a)


def _quantifier(base: str, parts: Sequence[Formula]) -> str:
    taken = set().union(*(p.free_tyvars for p in parts)) if parts else set()
    return base if base not in taken else fresh_tyvar(base, taken)


def nat() -> Formula:
    """``forall a. !(a -o a) -o $(a -o a)``"""
    a = TyVar("a")
    return Forall("a", Lolli(Bang(_arrow(a)), Par(_arrow(a))))


def word() -> Formula:
    """``forall a. !(a -o a) -o !(a -o a) -o $(a -o a)``"""
    a = TyVar("a")
    return Forall("a", Lolli(Bang(_arrow(a)), Lolli(Bang(_arrow(a)), Par(_arrow(a)))))


NAT = nat()
WORD = word()
ABBREVIATIONS = {"N": NAT, "W": WORD}


def tensor(parts: Sequence[Formula]) -> Formula:
    """``forall g. (A1 -o ... -o Am -o g) -o g``"""
    g = _quantifier("g", parts)
    return Forall(g, Lolli(arrows(parts, TyVar(g)), TyVar(g)))


def etensor(parts: Sequence[Formula]) -> Formula:
    """Elementary tensor: ``forall g. (A1 =o ... =o Am =o g) -o g``; every Ai is $-modal"""
    g = _quantifier("g", parts)
    return Forall(g, Lolli(arrows(parts, TyVar(g), eager=True), TyVar(g)))


def boolean(m: int) -> Formula:
    """``B_m = forall a. (a x ... x a) -o a``, the type of the m projections"""
    a = TyVar("a")
    return Forall("a", Lolli(tensor([a] * m), a))


def list_of(element: Formula) -> Formula:
    """``L $A = forall a. !($A =o a -o a) -o $(a -o a)``"""
    a = TyVar(_quantifier("a", [element]))
    return Forall(a.name, Lolli(Bang(EagerLolli(element, _arrow(a))), Par(_arrow(a))))


def words(levels: Sequence[int]) -> List[Formula]:
    return [par_n(k, WORD) for k in levels]


# ---------- configurations ----------

def config_levels(n: int, s: int, m: int) -> List[int]:
    """The modal depth of each list: one normal head list, n normal, s safe"""
    return [1] * (1 + n) + [m] * s


def config_steps(alphas: Sequence[Formula], levels: Sequence[int]) -> List[Formula]:
    """``!($A_i =o a_i -o a_i)`` for every list"""
    return [Bang(EagerLolli(par_n(k, WORD), _arrow(a))) for a, k in zip(alphas, levels)]


def _answer(alphas: Sequence[Formula], m: int, g: Formula) -> Formula:
    """``($^m W =o a_0 -o ... -o g) -o g``"""
    return Lolli(EagerLolli(par_n(m, WORD), arrows(alphas, g)), g)


def configuration(n: int, s: int, m: int) -> Formula:
    """C[1+n; s; m]: the type of a state of the iterator"""
    levels = config_levels(n, s, m)
    names = [f"a{i}" for i in range(len(levels))]
    alphas = [TyVar(x) for x in names]
    inner = arrows(alphas, Forall("c", _answer(alphas, m, TyVar("c"))))
    return foralls(names, arrows(config_steps(alphas, levels), Par(inner)))


def final_configuration(n: int, s: int, m: int) -> Formula:
    """FC[1+n; s; m]: C with the answer quantifier moved to the front"""
    levels = config_levels(n, s, m)
    names = [f"a{i}" for i in range(len(levels))]
    alphas = [TyVar(x) for x in names]
    inner = arrows(alphas, _answer(alphas, m, TyVar("c")))
    return foralls(names + ["c"], arrows(config_steps(alphas, levels), Par(inner)))


# ---------- pre-configurations ----------

Field = Tuple[Formula, bool]


def pair_fields(alpha: Formula, delta: Formula, k: int) -> List[Field]:
    """The four components of a head/tail pair over a list of $^k W.

    The list constructor, the function applied to the tail as a closed box,
    the head itself, and the delayed tail.
    """
    element = par_n(k, WORD)
    return [
        (EagerLolli(element, _arrow(alpha)), False),
        (par_n(k, _arrow(WORD)), True),
        (element, True),
        (Lolli(_arrow(delta), alpha), False),
    ]


def fields_to(fields: Sequence[Field], result: Formula) -> Formula:
    for ty, eager in reversed(list(fields)):
        result = EagerLolli(ty, result) if eager else Lolli(ty, result)
    return result


def pair(alpha: Formula, delta: Formula, k: int) -> Formula:
    """T[a, d; $^k W] = forall b. ((U -o b) -o b)"""
    fields = pair_fields(alpha, delta, k)
    b = _quantifier("b", [alpha, delta])
    return Forall(b, Lolli(fields_to(fields, TyVar(b)), TyVar(b)))


def preconfiguration(alphas: Sequence[Formula], delta: Formula, levels: Sequence[int],
                     m: int) -> Formula:
    """SC: the answer quantifier over the head/tail pairs of every list"""
    pairs = [pair(a, delta, k) for a, k in zip(alphas, levels)]
    g = _quantifier("c", list(alphas) + [delta])
    return Forall(g, Lolli(EagerLolli(par_n(m, WORD), arrows(pairs, TyVar(g))), TyVar(g)))
