"""Forgetful map from typed judgments to System F shaped judgments."""

from dataclasses import dataclass
from typing import Dict

from walt_workbench.formulas.types import Bang, EagerLolli, Forall, Formula, Lolli, Par, TyVar
from walt_workbench.judgments.derivation import Judgment
from walt_workbench.syntax.terms import Term


class FType:
    def __str__(self) -> str:
        return _show(self, nested=False)


@dataclass(frozen=True)
class FVar(FType):
    name: str


@dataclass(frozen=True)
class Arrow(FType):
    left: FType
    right: FType


@dataclass(frozen=True)
class FAll(FType):
    var: str
    body: FType


def _show(t: FType, nested: bool) -> str:
    if isinstance(t, FVar):
        return t.name
    if isinstance(t, Arrow):
        text = f"{_show(t.left, True)} -> {_show(t.right, False)}"
    else:
        assert isinstance(t, FAll)
        text = f"forall {t.var}. {_show(t.body, False)}"
    return f"({text})" if nested else text


def erase_type(f: Formula) -> FType:
    while isinstance(f, (Bang, Par)):
        f = f.body
    if isinstance(f, TyVar):
        return FVar(f.name)
    if isinstance(f, (Lolli, EagerLolli)):
        return Arrow(erase_type(f.left), erase_type(f.right))
    assert isinstance(f, Forall)
    return FAll(f.var, erase_type(f.body))


@dataclass(frozen=True)
class ErasedJudgment:
    context: Dict[str, FType]
    subject: Term
    ty: FType

    def __str__(self) -> str:
        ctx = ",".join(f"{x}:{self.context[x]}" for x in sorted(self.context))
        return f"{{{ctx}}} |- {self.subject} : {self.ty}"


def erase_to_f(j: Judgment) -> ErasedJudgment:
    """Flatten G ; D ; E into one context and erase modalities and arrow kinds"""
    flat: Dict[str, Formula] = dict(j.gamma)
    flat.update(j.delta)
    flat.update(j.e.assignments())
    return ErasedJudgment({x: erase_type(t) for x, t in flat.items()}, j.subject, erase_type(j.ty))
