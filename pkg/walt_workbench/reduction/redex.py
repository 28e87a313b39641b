"""
The restricted beta rule and its redexes.

``(\\x.M) N`` may fire only when x is erased, when it occurs once and N is a
value, or when it occurs several times and N is a value with at most one
free variable. Plain beta redexes (``RedexCase.BETA``) are only produced on
request, for runs that must get past a linear redex whose argument is still
an application.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional

from walt_workbench.core.errors import NotARedex
from walt_workbench.syntax.terms import (
    Abs, App, Position, Term, format_position, is_value, nocc, replace_at,
    substitute, subterm_at, subterms,
)


class RedexCase(str, Enum):
    ERASING = "erasing"
    LINEAR_VALUE = "linear-value"
    DUPLICABLE_VALUE = "duplicable-value"
    BETA = "beta"


@dataclass(frozen=True)
class Redex:
    pos: Position
    case: RedexCase
    binder_occurrences: int

    def __str__(self) -> str:
        return f"{self.case.value}@{format_position(self.pos)}"


def classify(t: Term) -> Optional[RedexCase]:
    """Which of the three conditions makes ``t`` a redex, if any"""
    if not (isinstance(t, App) and isinstance(t.fun, Abs)):
        return None
    n = nocc(t.fun.binder, t.fun.body)
    if n == 0:
        return RedexCase.ERASING
    if not is_value(t.arg):
        return None
    if n == 1:
        return RedexCase.LINEAR_VALUE
    if len(t.arg.free_vars) <= 1:
        return RedexCase.DUPLICABLE_VALUE
    return None


def iter_redexes(t: Term) -> Iterator[Redex]:
    for pos, sub in subterms(t):
        case = classify(sub)
        if case is not None:
            assert isinstance(sub, App) and isinstance(sub.fun, Abs)
            yield Redex(pos, case, nocc(sub.fun.binder, sub.fun.body))


def iter_beta_redexes(t: Term) -> Iterator[Redex]:
    """Every ``(\\x.M) N``, restricted or not, leftmost-outermost"""
    for pos, sub in subterms(t):
        if isinstance(sub, App) and isinstance(sub.fun, Abs):
            yield Redex(pos, classify(sub) or RedexCase.BETA, nocc(sub.fun.binder, sub.fun.body))


def find_redexes(t: Term) -> List[Redex]:
    """Every redex of ``t`` in leftmost-outermost order"""
    return list(iter_redexes(t))


def is_normal(t: Term) -> bool:
    return next(iter_redexes(t), None) is None


def is_beta_normal(t: Term) -> bool:
    return next(iter_beta_redexes(t), None) is None


def stuck_redexes(t: Term) -> List[Redex]:
    """Plain beta redexes the restricted rule refuses"""
    return [r for r in iter_beta_redexes(t) if r.case is RedexCase.BETA]


def contract(redex: Term, unrestricted: bool = False) -> Term:
    """``(\\x.M) N`` to ``M{N/x}``; raises NotARedex when no condition holds"""
    if not (isinstance(redex, App) and isinstance(redex.fun, Abs)):
        raise NotARedex(f"{redex} is not an application of an abstraction")
    if not unrestricted and classify(redex) is None:
        raise NotARedex(f"{redex} is not a redex")
    return substitute(redex.fun.body, {redex.fun.binder: redex.arg})


def step(t: Term, r: Redex) -> Term:
    try:
        sub = subterm_at(t, r.pos)
    except KeyError as e:
        raise NotARedex(f"no subterm at {format_position(r.pos)}") from e
    return replace_at(t, r.pos, contract(sub, unrestricted=r.case is RedexCase.BETA))
