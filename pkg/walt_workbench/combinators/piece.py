"""
Pieces: annotated combinators together with the formula they are built for.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Optional

from walt_workbench.core.errors import ElaborationError, HypothesisTypeMismatch
from walt_workbench.core.logging_config import get_logger
from walt_workbench.formulas.types import Formula
from walt_workbench.judgments.annotated import Node, erase
from walt_workbench.judgments.derivation import Derivation
from walt_workbench.judgments.elaborate import elaborate
from walt_workbench.syntax.terms import Term

logger = get_logger("piece", "combinators")

# what a word function computes, on naturals
Semantics = Callable[..., int]


@dataclass(frozen=True, eq=False)
class Piece:
    name: str
    node: Node
    ty: Formula
    semantics: Optional[Semantics] = None
    # linear free variables, for realizers with holes
    free: Mapping[str, Formula] = field(default_factory=dict)

    @cached_property
    def term(self) -> Term:
        return erase(self.node)

    @cached_property
    def derivation(self) -> Derivation:
        """The checked derivation; its conclusion carries exactly ``ty``"""
        d = elaborate(self.node, gamma=dict(self.free))
        if d.conclusion.ty != self.ty:
            raise ElaborationError(f"{self.name} derives {d.conclusion.ty}, built for {self.ty}")
        logger.debug(f"{self.name}: {d.node_count} derivation nodes")
        return d

    def __str__(self) -> str:
        return self.name


def require(piece: Piece, expected: Formula, role: str) -> Piece:
    """Check that a sub-term parameter has the formula a hypothesis asks for"""
    if piece.ty != expected:
        raise HypothesisTypeMismatch(f"{role} {piece.name} has {piece.ty}, expected {expected}")
    return piece
