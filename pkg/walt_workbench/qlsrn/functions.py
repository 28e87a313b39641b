"""
Function symbols and terms of quasi-linear safe recursion on notation.

Every function symbol has a normal arity k and a safe arity l. Base symbols
are zero, the two successors, the predecessor, projections and branching;
composition and safe recursion build the others and check the arities of
their parts when constructed.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, Mapping, Tuple

from walt_workbench.combinators.encoders import binary_digits
from walt_workbench.core.errors import ArityMismatch, NonLinearSafeVariable

Arity = Tuple[int, int]


class QFunction:
    """A function symbol; ``arity`` is (normal, safe)"""

    @property
    def arity(self) -> Arity:
        raise NotImplementedError

    @property
    def normal(self) -> int:
        return self.arity[0]

    @property
    def safe(self) -> int:
        return self.arity[1]

    def __call__(self, *args: "QTerm") -> "Apply":
        """``f(t1, .., tk, u1, .., ul)`` with the normal arguments first"""
        k = self.normal
        return Apply(self, tuple(args[:k]), tuple(args[k:]))


@dataclass(frozen=True)
class Zero(QFunction):
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise ArityMismatch(f"negative arity z[{self.k};{self.l}]")

    @property
    def arity(self) -> Arity:
        return (self.k, self.l)


@dataclass(frozen=True)
class Suc(QFunction):
    """Appends ``digit`` below the least significant digit"""
    digit: int

    def __post_init__(self):
        if self.digit not in (0, 1):
            raise ArityMismatch(f"successors append 0 or 1, got {self.digit}")

    @property
    def arity(self) -> Arity:
        return (0, 1)


@dataclass(frozen=True)
class Pred(QFunction):
    @property
    def arity(self) -> Arity:
        return (0, 1)


@dataclass(frozen=True)
class Proj(QFunction):
    k: int
    l: int
    i: int  # from 1

    def __post_init__(self):
        if not 1 <= self.i <= self.k + self.l:
            raise ArityMismatch(f"proj[{self.k};{self.l};{self.i}] needs 1 <= i <= {self.k + self.l}")

    @property
    def arity(self) -> Arity:
        return (self.k, self.l)


@dataclass(frozen=True)
class Branch(QFunction):
    @property
    def arity(self) -> Arity:
        return (0, 3)


@dataclass(frozen=True)
class Comp(QFunction):
    """``comp(f, g1 .. gk', h1 .. hl')``: the g's see the normal arguments, h_j its own slice of safe ones"""
    k: int
    f: QFunction
    gs: Tuple[QFunction, ...] = ()
    hs: Tuple[QFunction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gs", tuple(self.gs))
        object.__setattr__(self, "hs", tuple(self.hs))
        if self.f.arity != (len(self.gs), len(self.hs)):
            raise ArityMismatch(f"the outer function has arity {self.f.arity}, "
                                f"composed with {len(self.gs)} normal and {len(self.hs)} safe functions")
        for j, g in enumerate(self.gs):
            if g.arity != (self.k, 0):
                raise ArityMismatch(f"normal function {j + 1} has arity {g.arity}, expected ({self.k}, 0)")
        for j, h in enumerate(self.hs):
            if h.normal != self.k:
                raise ArityMismatch(f"safe function {j + 1} has {h.normal} normal arguments, expected {self.k}")

    @property
    def slices(self) -> Tuple[int, ...]:
        return tuple(h.safe for h in self.hs)

    @property
    def arity(self) -> Arity:
        return (self.k, sum(self.slices))


@dataclass(frozen=True)
class Rec(QFunction):
    """``rec(g, h0, h1)``: g on zero, h_i on a word ending in digit i"""
    g: QFunction
    h0: QFunction
    h1: QFunction

    def __post_init__(self):
        k, l = self.g.arity
        for i, h in enumerate((self.h0, self.h1)):
            if h.arity != (k + 1, l + 1):
                raise ArityMismatch(f"h{i} has arity {h.arity}, expected ({k + 1}, {l + 1})")

    @property
    def arity(self) -> Arity:
        return (self.g.normal + 1, self.g.safe)


SUC0, SUC1, PRED, BRANCH = Suc(0), Suc(1), Pred(), Branch()


# ---------- terms ----------

class QTerm:
    pass


@dataclass(frozen=True)
class Var(QTerm):
    name: str


@dataclass(frozen=True)
class Apply(QTerm):
    f: QFunction
    normals: Tuple[QTerm, ...] = ()
    safes: Tuple[QTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "normals", tuple(self.normals))
        object.__setattr__(self, "safes", tuple(self.safes))
        if (len(self.normals), len(self.safes)) != self.f.arity:
            raise ArityMismatch(f"a function of arity {self.f.arity} applied to "
                                f"{len(self.normals)} normal and {len(self.safes)} safe arguments")


def free_variables(t: QTerm) -> FrozenSet[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    assert isinstance(t, Apply)
    out: FrozenSet[str] = frozenset()
    for arg in (*t.normals, *t.safes):
        out |= free_variables(arg)
    return out


def is_closed(t: QTerm) -> bool:
    return not free_variables(t)


def numeral(n: int) -> QTerm:
    """``s_nu0(.. (s1(z)) ..)``, least significant digit outermost"""
    t: QTerm = Apply(Zero())
    for d in reversed(binary_digits(n)):
        t = Apply(Suc(d), (), (t,))
    return t


def substitute(t: QTerm, env: Mapping[str, int]) -> QTerm:
    """Replace every bound variable by its numeral"""
    if isinstance(t, Var):
        return numeral(env[t.name]) if t.name in env else t
    assert isinstance(t, Apply)
    return Apply(t.f, tuple(substitute(a, env) for a in t.normals),
                 tuple(substitute(a, env) for a in t.safes))


def subterms(t: QTerm) -> Iterator[QTerm]:
    yield t
    if isinstance(t, Apply):
        for arg in (*t.normals, *t.safes):
            yield from subterms(arg)


def linear_safe_violations(t: QTerm) -> Dict[str, int]:
    """Variables shared by two safe arguments of one application, with the number of arguments they occur in"""
    shared: Dict[str, int] = {}
    for sub in subterms(t):
        if not isinstance(sub, Apply):
            continue
        seen: Dict[str, int] = {}
        for arg in sub.safes:
            for x in free_variables(arg):
                seen[x] = seen.get(x, 0) + 1
        shared.update({x: c for x, c in seen.items() if c > 1})
    return shared


def require_linear(t: QTerm) -> QTerm:
    shared = linear_safe_violations(t)
    if shared:
        raise NonLinearSafeVariable(f"safe variables used by several safe arguments: {sorted(shared)}")
    return t
