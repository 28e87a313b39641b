"""
Church encodings of data and their annotated builders.

Strings are Church numerals ``\\f y. f (... (f y))``. Words are binary with
the least significant bit outermost: ``\\s0 s1 y. v0 (... (v_{m-1} (s1 y)))``,
and a canonical word with a digit has 1 as its most significant one.
"""

from typing import Iterable, List, Optional, Sequence, Tuple

from walt_workbench.combinators.schemas import NAT, WORD, etensor, tensor
from walt_workbench.core.errors import NotACanonicalString, NotACanonicalWord
from walt_workbench.formulas.types import (
    Bang, EagerLolli, Formula, Lolli, Par, TyVar, arrows, fresh_tyvar, par_depth,
)
from walt_workbench.judgments.annotated import Ap, Box, Gen, Inst, Lam, Node, V, ap, free_names, lam
from walt_workbench.syntax.terms import Abs, App, Term, Var, apps, fresh_name, lams, var

WORD_BINDERS = ("s0", "s1")


def pick(base: str, avoid: Iterable[str]) -> str:
    """``base`` unless taken, else a fresh variant"""
    avoid = frozenset(avoid)
    return base if base not in avoid else fresh_name(base, avoid)


def binary_digits(n: int) -> List[int]:
    """Least significant first; empty for 0"""
    if n < 0:
        raise ValueError(f"words encode naturals, got {n}")
    out = []
    while n:
        out.append(n & 1)
        n >>= 1
    return out


# ---------- terms ----------

def encode_string(n: int) -> Term:
    if n < 0:
        raise ValueError(f"strings encode naturals, got {n}")
    body: Term = var("y")
    for _ in range(n):
        body = App(var("f"), body)
    return lams("f y", body)


def decode_string(t: Term) -> int:
    if not (isinstance(t, Abs) and isinstance(t.body, Abs)) or t.binder == t.body.binder:
        raise NotACanonicalString(f"{t} is not \\f y. f (... y)")
    f, y = t.binder, t.body.binder
    body, n = t.body.body, 0
    while isinstance(body, App) and body.fun == Var(f):
        body, n = body.arg, n + 1
    if body != Var(y):
        raise NotACanonicalString(f"{t} is not \\f y. f (... y)")
    return n


def word_body(digits: Sequence[int], tail: Term, names: Tuple[str, str] = WORD_BINDERS) -> Term:
    for d in reversed(list(digits)):
        tail = App(var(names[d]), tail)
    return tail


def encode_word(n: int) -> Term:
    return lams([*WORD_BINDERS, "y"], word_body(binary_digits(n), var("y")))


def decode_word(t: Term) -> int:
    shape = t
    binders = []
    for _ in range(3):
        if not isinstance(shape, Abs):
            raise NotACanonicalWord(f"{t} is not \\s0 s1 y. ...")
        binders.append(shape.binder)
        shape = shape.body
    if len(set(binders)) != 3:
        raise NotACanonicalWord(f"{t} repeats a binder")
    zero, one, y = binders
    digits = []
    while isinstance(shape, App) and isinstance(shape.fun, Var) and shape.fun.name in (zero, one):
        digits.append(0 if shape.fun.name == zero else 1)
        shape = shape.arg
    if shape != Var(y):
        raise NotACanonicalWord(f"{t} does not end in its last binder")
    if digits and digits[-1] != 1:
        raise NotACanonicalWord(f"{t} has a 0 above its most significant 1")
    return sum(d << i for i, d in enumerate(digits))


def tuple_term(items: Sequence[Term]) -> Term:
    """``<M1 ... Mm> = \\z. z M1 ... Mm``"""
    z = pick("z", set().union(*(m.free_vars for m in items)) if items else ())
    return Abs(z, apps(var(z), *items))


def projection_term(m: int, i: int) -> Term:
    """``pi^m_i = \\<x0 ... x_{m-1}>. x_i``"""
    if not 0 <= i < m:
        raise ValueError(f"projection {i} out of {m}")
    xs = [f"x{j}" for j in range(m)]
    return Abs("w", App(var("w"), lams(xs, var(xs[i]))))


def list_term(items: Sequence[Term]) -> Term:
    """``[M1 ... Mm] = \\c x. c M1 (... (c Mm x))``"""
    taken = set().union(*(m.free_vars for m in items)) if items else set()
    c, x = pick("c", taken), pick("x", taken)
    body: Term = var(x)
    for item in reversed(list(items)):
        body = apps(var(c), item, body)
    return lams([c, x], body)


def decode_list(t: Term) -> List[Term]:
    """The elements of ``\\c x. c M1 (... (c Mm x))``"""
    if not (isinstance(t, Abs) and isinstance(t.body, Abs)) or t.binder == t.body.binder:
        raise ValueError(f"{t} is not a list")
    c, x = t.binder, t.body.binder
    body, out = t.body.body, []
    while (isinstance(body, App) and isinstance(body.fun, App)
           and body.fun.fun == Var(c)):
        out.append(body.fun.arg)
        body = body.arg
    if body != Var(x):
        raise ValueError(f"{t} is not a list")
    return out


def boxes(node: Node, k: int, kind: str = "$") -> Node:
    for _ in range(k):
        node = Box(node, kind)
    return node


def passed(name: str, expected: Formula) -> Node:
    """A boxed variable passed where ``expected`` is wanted, one $-box per leading $"""
    return boxes(V(name), par_depth(expected))


def instantiate(node: Node, *types: Optional[Formula]) -> Node:
    for ty in types:
        node = Inst(node, ty)
    return node


def identity(ty: Formula, name: str = "x") -> Node:
    return Lam(name, ty, V(name))


def string_node(n: int) -> Node:
    a = TyVar("a")
    body: Node = V("y")
    for _ in range(n):
        body = Ap(V("f"), body)
    return Gen(Lam("f", Bang(Lolli(a, a)), Box(Lam("y", a, body))), "a")


def word_node(n: int) -> Node:
    a = TyVar("a")
    step = Bang(Lolli(a, a))
    body: Node = V("y")
    for d in reversed(binary_digits(n)):
        body = Ap(V(WORD_BINDERS[d]), body)
    return Gen(lam([(WORD_BINDERS[0], step), (WORD_BINDERS[1], step)], Box(Lam("y", a, body))), "a")


def _tuple(items: Sequence[Tuple[Node, Formula]], eager: bool) -> Node:
    parts = [ty for _, ty in items]
    g = TyVar(fresh_tyvar("g", set().union(*(p.free_tyvars for p in parts)) if parts else ()))
    z = pick("z", set().union(*(free_names(node) for node, _ in items)) if items else ())
    return Gen(Lam(z, arrows(parts, g, eager=eager), ap(V(z), *(node for node, _ in items))), g.name)


def tuple_node(items: Sequence[Tuple[Node, Formula]]) -> Node:
    """``<M1 ... Mm>`` at ``tensor`` of the item formulae"""
    return _tuple(items, eager=False)


def etuple_node(items: Sequence[Tuple[Node, Formula]]) -> Node:
    """Elementary tuple; every item is a $-formula depending on elementary assumptions only"""
    return _tuple(items, eager=True)


def open_tuple(scrutinee: Node, parts: Sequence[Formula], names: Sequence[str], body: Node,
               result: Formula, elementary: bool = False) -> Node:
    """``t (\\x1 ... xm. M)`` for a tuple ``t``, with M of formula ``result``.

    A tuple only answers at linear formulae. A modal ``result`` travels as
    ``(p -o p) -o result`` and the identity is applied to the answer:
    ``t (\\x1 ... xm u. M) (\\v. v)``.
    """
    binders = [(x, ty, elementary) for x, ty in zip(names, parts)]
    if result.is_linear:
        return Ap(Inst(scrutinee, result), lam(binders, body))
    taken = set(result.free_tyvars).union(*(p.free_tyvars for p in parts))
    p = TyVar(fresh_tyvar("p", taken))
    u = pick("u", free_names(body) | set(names))
    answer = lam(binders + [(u, Lolli(p, p))], body)
    return ap(Inst(scrutinee, Lolli(Lolli(p, p), result)), answer, identity(p, "v"))


def untuple_node(parts: Sequence[Formula], names: Sequence[str], body: Node,
                 result: Formula, elementary: bool = False) -> Node:
    """``\\<x1 ... xm>. M = \\w. w (\\x1 ... xm. M)`` at ``tensor(parts) -o result``"""
    w = pick("w", free_names(body) | set(names))
    scrutinee = etensor(parts) if elementary else tensor(parts)
    return Lam(w, scrutinee, open_tuple(V(w), parts, names, body, result, elementary))


def projection_node(i: int, parts: Sequence[Formula]) -> Node:
    """The projection on component ``i`` of a tensor of ``parts``"""
    names = [f"x{j}" for j in range(len(parts))]
    return untuple_node(parts, names, V(names[i]), parts[i])


def boolean_node(m: int, i: int) -> Node:
    """``pi^m_i`` at ``B_m``"""
    if not 0 <= i < m:
        raise ValueError(f"projection {i} out of {m}")
    a = TyVar("a")
    return Gen(projection_node(i, [a] * m), "a")


def list_node(items: Sequence[Node], element: Formula) -> Node:
    """``[M1 ... Mm]`` at ``L element``; each item is a closed node of the $-formula ``element``"""
    if not isinstance(element, Par):
        raise ValueError(f"list elements need a $-formula, got {element}")
    a = TyVar(fresh_tyvar("a", element.free_tyvars))
    body: Node = V("x")
    for item in reversed(list(items)):
        body = ap(V("c"), item, body)
    c = Lam("c", Bang(EagerLolli(element, Lolli(a, a))), Box(Lam("x", a, body)))
    return Gen(c, a.name)


NODE_TYPES = {"string": NAT, "word": WORD}


def decode_tuple(t: Term) -> List[Term]:
    """The components of ``\\z. z M1 ... Mm``"""
    if not isinstance(t, Abs):
        raise ValueError(f"{t} is not a tuple")
    z, body, out = t.binder, t.body, []
    while isinstance(body, App):
        out.append(body.arg)
        body = body.fun
    if body != Var(z) or any(z in m.free_vars for m in out):
        raise ValueError(f"{t} is not a tuple")
    return out[::-1]


def decode_projection(t: Term) -> Tuple[int, int]:
    """``(m, i)`` of ``pi^m_i``; booleans are projections"""
    if not (isinstance(t, Abs) and isinstance(t.body, App) and t.body.fun == Var(t.binder)):
        raise ValueError(f"{t} is not a projection")
    shape, binders = t.body.arg, []
    while isinstance(shape, Abs):
        binders.append(shape.binder)
        shape = shape.body
    if (not isinstance(shape, Var) or shape.name not in binders or len(set(binders)) != len(binders)
            or t.binder in binders):
        raise ValueError(f"{t} is not a projection")
    return len(binders), binders.index(shape.name)
