from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

@dataclass
class StepRecord:
    index: int
    depth: Optional[int]
    pos: Tuple[str, ...]
    before: Any  # Term
    after: Any   # Term
    case: str = ""

@dataclass
class RoundSummary:
    level: int
    steps: int
    size: int

@dataclass
class Trace:
    steps: List[StepRecord] = field(default_factory=list)
    rounds: List[RoundSummary] = field(default_factory=list)
    result: Any = None  # Term

    @property
    def step_count(self) -> int:
        return len(self.steps)

@dataclass
class MeasureReport:
    depth: int
    psz: List[int]
    wdth: List[int]

    def as_dict(self) -> Dict[str, Any]:
        return {"depth": self.depth, "psz": list(self.psz), "wdth": list(self.wdth)}

@dataclass
class BoundReport:
    k: int
    depth: int
    size: int
    per_round_bounds: List[int]
    size_bounds: List[int]
    bound: int
    # psz_0, then the size surrogate of the term entering each later round
    step_bounds: List[int] = field(default_factory=list)
