"""
Untyped lambda-terms with named variables.

Terms are immutable and compare up to alpha-equivalence. Every node may carry
an optional ``depth`` annotation (ignored by equality) which the reduction
engine uses to index redexes by the depth of the derivation node that built
them.
"""

import itertools
import re
import sys
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

# Church encodings of desk-scale inputs nest a few thousand nodes deep.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

BODY = "body"
FUN = "fun"
ARG = "arg"

Position = Tuple[str, ...]

_fresh_counter = itertools.count(1)
_SUFFIX = re.compile(r"_\d+$")


def fresh_name(base: str, avoid: FrozenSet[str] = frozenset()) -> str:
    """Return ``base`` with a new global counter suffix, outside ``avoid``"""
    stem = _SUFFIX.sub("", base) or "v"
    while True:
        candidate = f"{stem}_{next(_fresh_counter)}"
        if candidate not in avoid:
            return candidate


class Term:
    """Common behaviour of Var, Abs and App"""

    depth: Optional[int]

    @cached_property
    def free_counts(self) -> Dict[str, int]:
        raise NotImplementedError

    @cached_property
    def free_vars(self) -> FrozenSet[str]:
        return frozenset(self.free_counts)

    @cached_property
    def size(self) -> int:
        raise NotImplementedError

    @cached_property
    def alpha_key(self) -> object:
        return _alpha_key(self, {}, 0)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        if self.size != other.size:
            return False
        return self.alpha_key == other.alpha_key

    def __hash__(self) -> int:
        return hash(self.alpha_key)

    def __str__(self) -> str:
        from walt_workbench.syntax.printer import print_term
        return print_term(self)


@dataclass(frozen=True, eq=False)
class Var(Term):
    name: str
    depth: Optional[int] = field(default=None, compare=False)

    @cached_property
    def free_counts(self) -> Dict[str, int]:
        return {self.name: 1}

    @cached_property
    def size(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class Abs(Term):
    binder: str
    body: Term
    depth: Optional[int] = field(default=None, compare=False)

    @cached_property
    def free_counts(self) -> Dict[str, int]:
        counts = dict(self.body.free_counts)
        counts.pop(self.binder, None)
        return counts

    @cached_property
    def size(self) -> int:
        return self.body.size + 1


@dataclass(frozen=True, eq=False)
class App(Term):
    fun: Term
    arg: Term
    depth: Optional[int] = field(default=None, compare=False)

    @cached_property
    def free_counts(self) -> Dict[str, int]:
        counts = dict(self.fun.free_counts)
        for name, n in self.arg.free_counts.items():
            counts[name] = counts.get(name, 0) + n
        return counts

    @cached_property
    def size(self) -> int:
        return self.fun.size + self.arg.size + 1


def _alpha_key(t: Term, env: Dict[str, int], level: int) -> object:
    if isinstance(t, Var):
        bound_at = env.get(t.name)
        return t.name if bound_at is None else level - bound_at
    if isinstance(t, Abs):
        saved = env.get(t.binder)
        env[t.binder] = level
        key = ("L", _alpha_key(t.body, env, level + 1))
        if saved is None:
            del env[t.binder]
        else:
            env[t.binder] = saved
        return key
    assert isinstance(t, App)
    return ("A", _alpha_key(t.fun, env, level), _alpha_key(t.arg, env, level))


# ---------- constructors ----------

def lams(binders: Union[str, Tuple[str, ...], list], body: Term) -> Term:
    """Nested abstraction ``\\x1 ... xn. body``; a string is split on whitespace"""
    names = binders.split() if isinstance(binders, str) else list(binders)
    for name in reversed(names):
        body = Abs(name, body)
    return body


def apps(head: Term, *args: Term) -> Term:
    """Left-associated application ``head a1 ... an``"""
    for arg in args:
        head = App(head, arg)
    return head


def var(name: str) -> Var:
    return Var(name)


# ---------- metrics ----------

def free_vars(t: Term) -> FrozenSet[str]:
    return t.free_vars


def nocc(x: str, t: Term) -> int:
    """Number of free occurrences of ``x`` in ``t``"""
    return t.free_counts.get(x, 0)


def size(t: Term) -> int:
    return t.size


def is_value(t: Term) -> bool:
    return isinstance(t, (Var, Abs))


def bound_vars(t: Term) -> FrozenSet[str]:
    names = set()
    for _, sub in subterms(t):
        if isinstance(sub, Abs):
            names.add(sub.binder)
    return frozenset(names)


# ---------- substitution ----------

def substitute(t: Term, bindings: Mapping[str, Term]) -> Term:
    """Capture-avoiding simultaneous substitution.

    Copies of a substituted term keep its own depth annotations; the
    surrounding context keeps the annotations it had.
    """
    live = {x: n for x, n in bindings.items() if x in t.free_counts}
    if not live:
        return t
    return _subst(t, live, {})


def _subst(t: Term, bindings: Dict[str, Term], renames: Dict[str, str]) -> Term:
    if isinstance(t, Var):
        if t.name in renames:
            return Var(renames[t.name], t.depth)
        return bindings.get(t.name, t)
    if isinstance(t, App):
        fun = _subst(t.fun, bindings, renames) if _touches(t.fun, bindings, renames) else t.fun
        arg = _subst(t.arg, bindings, renames) if _touches(t.arg, bindings, renames) else t.arg
        return App(fun, arg, t.depth)
    assert isinstance(t, Abs)
    inner = {x: n for x, n in bindings.items() if x != t.binder and x in t.body.free_counts}
    inner_renames = {x: y for x, y in renames.items() if x != t.binder}
    if not inner and not inner_renames:
        return t
    incoming = set(inner_renames.values())
    for n in inner.values():
        incoming |= n.free_vars
    binder = t.binder
    if binder in incoming:
        avoid = frozenset(incoming | t.body.free_vars | set(inner) | set(inner_renames))
        binder = fresh_name(t.binder, avoid)
        inner_renames = dict(inner_renames)
        inner_renames[t.binder] = binder
    return Abs(binder, _subst(t.body, inner, inner_renames), t.depth)


def _touches(t: Term, bindings: Dict[str, Term], renames: Dict[str, str]) -> bool:
    counts = t.free_counts
    return any(x in counts for x in bindings) or any(x in counts for x in renames)


def rename_bound(t: Term, avoid: FrozenSet[str]) -> Term:
    """Rename every binder of ``t`` that clashes with ``avoid``"""
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(rename_bound(t.fun, avoid), rename_bound(t.arg, avoid), t.depth)
    assert isinstance(t, Abs)
    body = rename_bound(t.body, avoid)
    if t.binder not in avoid:
        return Abs(t.binder, body, t.depth)
    new = fresh_name(t.binder, avoid | body.free_vars)
    return Abs(new, _subst(body, {}, {t.binder: new}), t.depth)


# ---------- positions ----------

def subterm_at(t: Term, pos: Position) -> Term:
    for selector in pos:
        if selector == BODY and isinstance(t, Abs):
            t = t.body
        elif selector == FUN and isinstance(t, App):
            t = t.fun
        elif selector == ARG and isinstance(t, App):
            t = t.arg
        else:
            raise KeyError(f"position {'/'.join(pos)} does not fit the term")
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if head == BODY and isinstance(t, Abs):
        return Abs(t.binder, replace_at(t.body, rest, new), t.depth)
    if head == FUN and isinstance(t, App):
        return App(replace_at(t.fun, rest, new), t.arg, t.depth)
    if head == ARG and isinstance(t, App):
        return App(t.fun, replace_at(t.arg, rest, new), t.depth)
    raise KeyError(f"position {'/'.join(pos)} does not fit the term")


def is_valid_position(t: Term, pos: Position) -> bool:
    try:
        subterm_at(t, pos)
    except KeyError:
        return False
    return True


def subterms(t: Term, prefix: Position = ()) -> Iterator[Tuple[Position, Term]]:
    """Pre-order walk (node, function side, argument side): leftmost-outermost order"""
    stack = [(prefix, t)]
    while stack:
        pos, node = stack.pop()
        yield pos, node
        if isinstance(node, Abs):
            stack.append((pos + (BODY,), node.body))
        elif isinstance(node, App):
            stack.append((pos + (ARG,), node.arg))
            stack.append((pos + (FUN,), node.fun))


def format_position(pos: Position) -> str:
    return "/".join(pos) if pos else "."


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in ("", "."):
        return ()
    parts = tuple(text.split("/"))
    for p in parts:
        if p not in (BODY, FUN, ARG):
            raise ValueError(f"unknown selector {p!r}")
    return parts


# ---------- depth annotations ----------

def annotate(t: Term, depths: Mapping[Position, int], prefix: Position = ()) -> Term:
    """Copy of ``t`` whose nodes carry the depths of ``depths`` (missing keys keep None)"""
    d = depths.get(prefix)
    if isinstance(t, Var):
        return Var(t.name, d)
    if isinstance(t, Abs):
        return Abs(t.binder, annotate(t.body, depths, prefix + (BODY,)), d)
    assert isinstance(t, App)
    return App(annotate(t.fun, depths, prefix + (FUN,)),
               annotate(t.arg, depths, prefix + (ARG,)), d)


def strip_depths(t: Term) -> Term:
    if isinstance(t, Var):
        return Var(t.name)
    if isinstance(t, Abs):
        return Abs(t.binder, strip_depths(t.body))
    assert isinstance(t, App)
    return App(strip_depths(t.fun), strip_depths(t.arg))


def depths_of(t: Term) -> Dict[Position, Optional[int]]:
    return {pos: node.depth for pos, node in subterms(t)}
