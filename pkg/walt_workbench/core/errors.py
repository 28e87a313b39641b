"""Exception hierarchy shared by every workbench module."""

from typing import Any, Optional, Sequence


class WorkbenchError(Exception):
    """Base class for all workbench errors"""


class ParseError(WorkbenchError):
    """Raised when a textual term, formula, derivation or machine description cannot be read"""

    def __init__(self, message: str, text: Optional[str] = None):
        super().__init__(message)
        self.text = text


# formulas

class IllFormedFormula(WorkbenchError):
    pass


class NonLinearSubstituend(WorkbenchError):
    pass


# judgments

class MergeViolation(WorkbenchError):
    pass


class DerivationError(WorkbenchError):
    """A derivation node failed its rule; carries the violation and the tree path"""

    def __init__(self, violation: Any, path: Sequence[int] = ()):
        self.violation = violation
        self.path = tuple(path)
        where = ".".join(str(i) for i in self.path) or "root"
        super().__init__(f"{violation} (at {where})")


class ElaborationError(WorkbenchError):
    """An annotated term has no derivation of the shape the elaborator builds"""


class WeakeningError(ElaborationError):
    """An unused assumption found no node able to absorb it"""


# reduction

class NotARedex(WorkbenchError):
    pass


class BudgetExhausted(WorkbenchError):
    def __init__(self, message: str, trace: Any = None):
        super().__init__(message)
        self.trace = trace


class NotNormalAfterFinalRound(WorkbenchError):
    def __init__(self, message: str, trace: Any = None):
        super().__init__(message)
        self.trace = trace


class StuckOnRestrictedRelation(NotNormalAfterFinalRound):
    """No restricted redex is left, but a plain beta redex is"""


# combinators

class NotACanonicalString(WorkbenchError):
    pass


class NotACanonicalWord(WorkbenchError):
    pass


class UnknownCombinator(WorkbenchError):
    pass


class ArityMismatch(WorkbenchError):
    pass


class HypothesisTypeMismatch(WorkbenchError):
    pass


class HypothesisViolated(WorkbenchError):
    pass


class RaggedLists(WorkbenchError):
    pass


# qlsrn

class UnboundVariable(WorkbenchError):
    pass


class OpenTerm(WorkbenchError):
    pass


class UndefinedEmbedding(WorkbenchError):
    pass


class NonLinearSafeVariable(WorkbenchError):
    """A variable feeds more than one safe argument of a composition"""


# tm

class NotAConfiguration(WorkbenchError):
    pass


class TMSpecError(WorkbenchError):
    pass


class OracleMismatch(WorkbenchError):
    """A normal form disagrees with the reference evaluator"""
