"""
WALT formulae.

    A ::= L | !A | $A
    L ::= a | A -o A | $A =o A | forall a. L

Formulae are immutable and compare up to renaming of bound type variables.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Tuple

from walt_workbench.core.errors import IllFormedFormula, NonLinearSubstituend

_fresh_tyvar = itertools.count(1)


class Formula:
    @cached_property
    def alpha_key(self) -> object:
        return _key(self, {}, 0)

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        raise NotImplementedError

    @property
    def is_linear(self) -> bool:
        return not isinstance(self, (Bang, Par))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula):
            return NotImplemented
        return self.alpha_key == other.alpha_key

    def __hash__(self) -> int:
        return hash(self.alpha_key)

    def __str__(self) -> str:
        from walt_workbench.formulas.printer import print_formula
        return print_formula(self)


@dataclass(frozen=True, eq=False)
class TyVar(Formula):
    name: str

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return frozenset({self.name})


@dataclass(frozen=True, eq=False)
class Lolli(Formula):
    left: Formula
    right: Formula

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return self.left.free_tyvars | self.right.free_tyvars


@dataclass(frozen=True, eq=False)
class EagerLolli(Formula):
    """``$A =o B``: the argument must be $-modal"""
    left: Formula
    right: Formula

    def __post_init__(self):
        if not isinstance(self.left, Par):
            raise IllFormedFormula(f"eager implication needs a $-modal argument, got {self.left}")

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return self.left.free_tyvars | self.right.free_tyvars


@dataclass(frozen=True, eq=False)
class Forall(Formula):
    var: str
    body: Formula

    def __post_init__(self):
        if not self.body.is_linear:
            raise IllFormedFormula(f"quantified body must be linear, got {self.body}")

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return self.body.free_tyvars - {self.var}


@dataclass(frozen=True, eq=False)
class Bang(Formula):
    body: Formula

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return self.body.free_tyvars


@dataclass(frozen=True, eq=False)
class Par(Formula):
    body: Formula

    @cached_property
    def free_tyvars(self) -> FrozenSet[str]:
        return self.body.free_tyvars


def _key(f: Formula, env: Dict[str, int], level: int) -> object:
    if isinstance(f, TyVar):
        bound_at = env.get(f.name)
        return f.name if bound_at is None else level - bound_at
    if isinstance(f, Lolli):
        return ("-o", _key(f.left, env, level), _key(f.right, env, level))
    if isinstance(f, EagerLolli):
        return ("=o", _key(f.left, env, level), _key(f.right, env, level))
    if isinstance(f, Bang):
        return ("!", _key(f.body, env, level))
    if isinstance(f, Par):
        return ("$", _key(f.body, env, level))
    assert isinstance(f, Forall)
    saved = env.get(f.var)
    env[f.var] = level
    key = ("A", _key(f.body, env, level + 1))
    if saved is None:
        del env[f.var]
    else:
        env[f.var] = saved
    return key


# ---------- operations ----------

def is_linear(f: Formula) -> bool:
    return f.is_linear


def free_tyvars(f: Formula) -> FrozenSet[str]:
    return f.free_tyvars


def subst_type(f: Formula, alpha: str, lin: Formula) -> Formula:
    """``f{lin/alpha}``, capture-avoiding over forall"""
    if not lin.is_linear:
        raise NonLinearSubstituend(f"cannot substitute the modal formula {lin} for {alpha}")
    return _subst(f, alpha, lin)


def _subst(f: Formula, alpha: str, lin: Formula) -> Formula:
    if alpha not in f.free_tyvars:
        return f
    if isinstance(f, TyVar):
        return lin
    if isinstance(f, Lolli):
        return Lolli(_subst(f.left, alpha, lin), _subst(f.right, alpha, lin))
    if isinstance(f, EagerLolli):
        return EagerLolli(_subst(f.left, alpha, lin), _subst(f.right, alpha, lin))
    if isinstance(f, Bang):
        return Bang(_subst(f.body, alpha, lin))
    if isinstance(f, Par):
        return Par(_subst(f.body, alpha, lin))
    assert isinstance(f, Forall)
    var, body = f.var, f.body
    if var in lin.free_tyvars:
        new = fresh_tyvar(var, lin.free_tyvars | body.free_tyvars)
        body = _subst(body, var, TyVar(new))
        var = new
    return Forall(var, _subst(body, alpha, lin))


def fresh_tyvar(base: str, avoid: Iterable[str] = ()) -> str:
    avoid = set(avoid)
    stem = base.rstrip("0123456789_") or "a"
    while True:
        candidate = f"{stem}_{next(_fresh_tyvar)}"
        if candidate not in avoid:
            return candidate


# ---------- shorthands ----------

def par_n(n: int, f: Formula) -> Formula:
    """``$^n f``"""
    for _ in range(n):
        f = Par(f)
    return f


def bang_n(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = Bang(f)
    return f


def strip_par(f: Formula, n: int) -> Formula:
    """Remove ``n`` leading ``$``; raises if the formula is not that modal"""
    for _ in range(n):
        if not isinstance(f, Par):
            raise IllFormedFormula(f"expected {n} leading $ in {f}")
        f = f.body
    return f


def par_depth(f: Formula) -> int:
    n = 0
    while isinstance(f, Par):
        f = f.body
        n += 1
    return n


def arrows(args: Iterable[Formula], result: Formula, eager: bool = False) -> Formula:
    """``A1 -o ... -o An -o result`` (or ``=o`` throughout when eager)"""
    items = list(args)
    for a in reversed(items):
        result = EagerLolli(a, result) if eager else Lolli(a, result)
    return result


def foralls(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


def tv(name: str) -> TyVar:
    return TyVar(name)


def split_foralls(f: Formula) -> Tuple[Tuple[str, ...], Formula]:
    names = []
    while isinstance(f, Forall):
        names.append(f.var)
        f = f.body
    return tuple(names), f
